#include "ergocoh/property_suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "ergocoh/bosonic.hpp"
#include "ergocoh/channels.hpp"
#include "ergocoh/errors.hpp"
#include "ergocoh/report_io.hpp"

namespace ergocoh {

namespace {

using nlohmann::json;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::mt19937_64 case_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Records one invariant. measure is an error quantity: the case passes when
/// measure <= tolerance (or < tolerance for strict checks).
class Tracker {
 public:
  Tracker(std::string name, double tolerance, bool strict = false) : strict_(strict) {
    out_.name = std::move(name);
    out_.tolerance = tolerance;
    out_.worst = -kInf;
  }

  void run(const std::function<double()>& measure, const std::function<json()>& dump) {
    double m;
    std::string error;
    try {
      m = measure();
    } catch (const std::exception& e) {
      m = kInf;
      error = e.what();
    }
    if (std::isnan(m)) m = kInf;
    ++out_.cases;
    out_.worst = std::max(out_.worst, m);
    const bool ok = strict_ ? m < out_.tolerance : m <= out_.tolerance;
    if (!ok && out_.passed) {
      out_.passed = false;
      json ce = dump();
      ce["measure"] = format_double(m);
      if (!error.empty()) ce["error"] = error;
      out_.counterexample = std::move(ce);
    }
  }

  PropertyOutcome finish() {
    if (out_.cases == 0) out_.worst = 0.0;
    return std::move(out_);
  }

 private:
  PropertyOutcome out_;
  bool strict_;
};

json case_dump(const StateCase& c, std::size_t index) {
  return json{{"case", index}, {"state", state_to_json(c.rho, c.h)}};
}

PermutationUnitary random_permutation(Index d, std::mt19937_64& rng, bool with_phases) {
  std::vector<Index> perm(static_cast<std::size_t>(d));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<double> phases;
  if (with_phases) {
    for (Index k = 0; k < d; ++k) phases.push_back(uniform(rng, -M_PI, M_PI));
  }
  return PermutationUnitary(std::move(perm), std::move(phases));
}

ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& m) { return u * m * u.adjoint(); }

double spectrum_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (hermitian_eigenvalues(a) - hermitian_eigenvalues(b)).cwiseAbs().maxCoeff();
}

/// Stinespring-style random channel: the first d columns of a Haar unitary
/// on C^{dk}, cut into k blocks of d rows.
KrausChannel random_channel(Index d, Index k, std::mt19937_64& rng) {
  const ComplexMatrix u = random_unitary(d * k, rng);
  std::vector<ComplexMatrix> ops;
  for (Index j = 0; j < k; ++j) ops.push_back(u.block(j * d, 0, d, d));
  return KrausChannel(std::move(ops));
}

constexpr std::array<Index, 4> kCorpusDims{2, 3, 4, 6};
constexpr std::array<double, 3> kBetas{0.1, 1.0, 10.0};

// --- qmat --------------------------------------------------------------------

void qmat_checks(const PropertySuiteOptions& o, std::vector<PropertyOutcome>& out) {
  Tracker recon("qmat.eig_reconstruction", 1e-10);
  Tracker trace("qmat.eig_trace", 1e-10);
  Tracker exp_inv("qmat.exp_inverse", 1e-9);
  Tracker exp_unit("qmat.exp_unitary", 1e-10);
  const std::size_t n = std::max<std::size_t>(o.states_per_dim / 5, 1);
  for (Index d = 2; d <= 8; ++d) {
    for (std::size_t i = 0; i < n; ++i) {
      auto rng = case_rng(o.seed, 100 + static_cast<std::uint64_t>(d), i);
      const ComplexMatrix m = random_hermitian(d, rng);
      auto dump = [&] { return json{{"case", i}, {"dim", d}}; };
      recon.run(
          [&] {
            const auto e = hermitian_eig(m);
            return max_abs_diff(m, e.vectors * e.values.asDiagonal() * e.vectors.adjoint());
          },
          dump);
      trace.run([&] { return std::abs(hermitian_eigenvalues(m).sum() - m.trace().real()); }, dump);

      const double norm = hermitian_eigenvalues(m).cwiseAbs().maxCoeff();
      const ComplexMatrix a = Complex(0.0, uniform(rng, 0.0, 10.0) / norm) * m;
      exp_inv.run(
          [&] {
            return max_abs_diff(matrix_exp(a) * matrix_exp(-a), ComplexMatrix::Identity(d, d));
          },
          dump);
      exp_unit.run(
          [&] {
            const ComplexMatrix u = matrix_exp(a);
            return max_abs_diff(u.adjoint() * u, ComplexMatrix::Identity(d, d));
          },
          dump);
    }
  }
  out.push_back(recon.finish());
  out.push_back(trace.finish());
  out.push_back(exp_inv.finish());
  out.push_back(exp_unit.finish());
}

// --- states ------------------------------------------------------------------

void states_checks(const PropertySuiteOptions& o, std::vector<PropertyOutcome>& out) {
  Tracker decreasing("states.gibbs_entropy_decreasing", 0.0, /*strict=*/true);
  Tracker relent("states.relent_gibbs_identity", 1e-9);
  Tracker invariance("states.unitary_invariance", 1e-9);
  for (Index d : kCorpusDims) {
    for (std::size_t i = 0; i < o.states_per_dim; ++i) {
      const StateCase c = make_case(o.seed, d, i, true);
      auto rng = case_rng(o.seed, 200 + static_cast<std::uint64_t>(d), i);
      auto dump = [&] { return case_dump(c, i); };

      if (i < 50 && !c.h.degenerate()) {
        decreasing.run(
            [&] {
              double worst = -kInf, prev = gibbs_entropy(0.0, c.h);
              for (int k = 1; k <= 40; ++k) {
                const double s = gibbs_entropy(0.25 * k, c.h);
                worst = std::max(worst, s - prev);
                prev = s;
              }
              return worst;
            },
            dump);
      }

      const double beta = kBetas[i % kBetas.size()];
      relent.run(
          [&] {
            const DensityMatrix g = gibbs_state({beta, c.h});
            const double rhs = beta * (c.h.expectation(c.rho.matrix()) - c.h.expectation(g.matrix())) -
                               von_neumann_entropy(c.rho) + von_neumann_entropy(g);
            return std::abs(relative_entropy(c.rho, g) - rhs);
          },
          [&] {
            json j = dump();
            j["beta"] = beta;
            return j;
          });

      invariance.run(
          [&] {
            const DensityMatrix r2 = validate_state(conjugate(random_unitary(d, rng), c.rho.matrix()));
            return std::max(std::abs(purity(r2) - purity(c.rho)),
                            std::abs(von_neumann_entropy(r2) - von_neumann_entropy(c.rho)));
          },
          dump);
    }
  }
  out.push_back(decreasing.finish());
  out.push_back(relent.finish());
  out.push_back(invariance.finish());
}

// --- coherence ---------------------------------------------------------------

void coherence_checks(const PropertySuiteOptions& o, std::vector<PropertyOutcome>& out) {
  Tracker idem("coherence.dephase_idempotent", 0.0);
  Tracker relent("coherence.relent_to_dephased", 1e-9);
  Tracker spectrum("coherence.permutation_spectrum", 1e-10);
  Tracker coh("coherence.permutation_coherence", 1e-10);
  Tracker pur("coherence.dephase_purity", 1e-14);
  Tracker phases("coherence.phase_irrelevance", 1e-9);
  for (Index d : kCorpusDims) {
    for (std::size_t i = 0; i < o.states_per_dim; ++i) {
      const StateCase c = make_case(o.seed, d, i, false);
      auto rng = case_rng(o.seed, 300 + static_cast<std::uint64_t>(d), i);
      auto dump = [&] { return case_dump(c, i); };
      const DensityMatrix delta = dephase(c.rho);

      idem.run([&] { return max_abs_diff(dephase(delta).matrix(), delta.matrix()); }, dump);
      relent.run([&] { return std::abs(rel_entropy_coherence(c.rho) - relative_entropy(c.rho, delta)); }, dump);
      pur.run([&] { return purity(delta) - purity(c.rho); }, dump);

      const PermutationUnitary v = random_permutation(d, rng, true);
      const DensityMatrix moved = apply_permutation(c.rho, v);
      spectrum.run([&] { return spectrum_distance(moved.matrix(), c.rho.matrix()); }, dump);
      coh.run([&] { return std::abs(rel_entropy_coherence(moved) - rel_entropy_coherence(c.rho)); }, dump);
      phases.run(
          [&] {
            const DensityMatrix plain = apply_permutation(c.rho, PermutationUnitary(v.perm()));
            const auto a = analyze(moved, c.h);
            const auto b = analyze(plain, c.h);
            return std::max({std::abs(a.ergotropy - b.ergotropy), std::abs(a.incoherent - b.incoherent),
                             std::abs(a.coherent - b.coherent), std::abs(a.coherence - b.coherence)});
          },
          dump);
    }
  }
  out.push_back(idem.finish());
  out.push_back(relent.finish());
  out.push_back(spectrum.finish());
  out.push_back(coh.finish());
  out.push_back(pur.finish());
  out.push_back(phases.finish());
}

// --- ergotropy ---------------------------------------------------------------

void ergotropy_checks(const PropertySuiteOptions& o, std::vector<PropertyOutcome>& out) {
  Tracker decomposition("ergotropy.decomposition", o.inject_failure ? -1.0 : 1e-9);
  Tracker nonneg("ergotropy.nonnegative", 1e-10);
  Tracker routes("ergotropy.route_equivalence", 1e-10);
  Tracker shift("ergotropy.shift_invariance", 1e-9);
  for (Index d : kCorpusDims) {
    for (std::size_t i = 0; i < o.states_per_dim; ++i) {
      const StateCase c = make_case(o.seed, d, i, false);
      auto rng = case_rng(o.seed, 400 + static_cast<std::uint64_t>(d), i);
      auto dump = [&] { return case_dump(c, i); };
      const double e = ergotropy(c.rho, c.h);
      const double ei = incoherent_ergotropy_perm(c.rho, c.h).value;
      const double ec = coherent_ergotropy(c.rho, c.h);

      decomposition.run([&] { return std::abs(e - ei - ec); }, dump);
      nonneg.run([&] { return -std::min({e, ei, ec}); }, dump);
      routes.run([&] { return std::abs(ei - incoherent_ergotropy_dephased(c.rho, c.h).value); }, dump);
      const double offset = uniform(rng, -5.0, 5.0);
      shift.run(
          [&] {
            const Hamiltonian hs = c.h.shifted(offset);
            return std::max({std::abs(ergotropy(c.rho, hs) - e),
                             std::abs(incoherent_ergotropy_perm(c.rho, hs).value - ei),
                             std::abs(coherent_ergotropy(c.rho, hs) - ec)});
          },
          [&] {
            json j = dump();
            j["offset"] = offset;
            return j;
          });
    }
  }
  out.push_back(decomposition.finish());
  out.push_back(nonneg.finish());
  out.push_back(routes.finish());
  out.push_back(shift.finish());

  Tracker exhaustive("ergotropy.permutation_exhaustive", 1e-12);
  for (Index d = 2; d <= 6; ++d) {
    for (std::size_t i = 0; i < o.exhaustive_states; ++i) {
      const StateCase c = make_case(o.seed ^ 0x5eed, d, i, false);
      exhaustive.run(
          [&] {
            return std::abs(incoherent_ergotropy_perm(c.rho, c.h).value -
                            brute_force_incoherent_ergotropy(c.rho, c.h));
          },
          [&] { return case_dump(c, i); });
    }
  }
  out.push_back(exhaustive.finish());

  Tracker sampling("ergotropy.unitary_sampling", 1e-9);
  for (std::size_t i = 0; i < o.unitary_states; ++i) {
    const Index d = kCorpusDims[i % kCorpusDims.size()];
    const StateCase c = make_case(o.seed ^ 0xface, d, i, false);
    auto rng = case_rng(o.seed, 500, i);
    sampling.run(
        [&] {
          const double e = ergotropy(c.rho, c.h);
          double worst = -kInf;
          for (std::size_t k = 0; k < o.unitaries_per_state; ++k) {
            worst = std::max(worst, extracted_work(c.rho, c.h, random_unitary(d, rng)) - e);
          }
          return worst;
        },
        [&] { return case_dump(c, i); });
  }
  out.push_back(sampling.finish());

  Tracker identity("ergotropy.coherent_identity", 1e-9);
  Tracker bounds("ergotropy.coherent_bounds", 1e-9);
  Tracker forms("ergotropy.bound_forms_agree", 1e-9);
  for (std::size_t i = 0; i < o.states_per_dim; ++i) {
    const StateCase c = make_case(o.seed ^ 0xb0b, 3, i, true);
    auto dump = [&] { return case_dump(c, i); };
    for (double beta : kBetas) {
      auto dump_beta = [&] {
        json j = dump();
        j["beta"] = beta;
        return j;
      };
      identity.run([&] { return ec_identity_and_bounds(c.rho, c.h, beta).identity_residual; }, dump_beta);
      bounds.run(
          [&] {
            const auto b = ec_identity_and_bounds(c.rho, c.h, beta);
            return std::max(b.lower - b.scaled_coherent, b.scaled_coherent - b.upper);
          },
          dump_beta);
    }
    forms.run([&] { return std::abs(bound_ergotropy(c.rho, c.h) - bound_ergotropy_relent(c.rho, c.h)); }, dump);
  }
  out.push_back(identity.finish());
  out.push_back(bounds.finish());
  out.push_back(forms.finish());

  Tracker qubit_bound("ergotropy.qubit_bound_vanishes", 1e-9);
  Tracker closed("ergotropy.qubit_closed_form", 1e-10);
  for (std::size_t i = 0; i < 2 * o.states_per_dim; ++i) {
    const StateCase c = make_case(o.seed ^ 0x0b17, 2, i, false);
    auto dump = [&] { return case_dump(c, i); };
    qubit_bound.run([&] { return std::abs(bound_ergotropy(c.rho, c.h)); }, dump);
    closed.run(
        [&] {
          const double gap = c.h.energy(1) - c.h.energy(0);
          return std::abs(qubit_coherent_ergotropy(purity(c.rho), l1_coherence(c.rho), gap) -
                          coherent_ergotropy(c.rho, c.h));
        },
        dump);
  }
  out.push_back(qubit_bound.finish());
  out.push_back(closed.finish());
}

// --- channels ----------------------------------------------------------------

void channel_checks(const PropertySuiteOptions& o, std::vector<PropertyOutcome>& out) {
  Tracker valid("channels.output_valid", 1e-10);
  for (Index d : kCorpusDims) {
    for (std::size_t i = 0; i < o.states_per_dim / 5; ++i) {
      const StateCase c = make_case(o.seed ^ 0xc4a, d, i, false);
      auto rng = case_rng(o.seed, 600 + static_cast<std::uint64_t>(d), i);
      const KrausChannel ch = random_channel(d, 1 + static_cast<Index>(i % 4), rng);
      valid.run(
          [&] {
            ComplexMatrix m = ComplexMatrix::Zero(d, d);
            for (const auto& e : ch.operators()) m += e * c.rho.matrix() * e.adjoint();
            const double herm = max_asymmetry(m);
            const double tr = std::abs(m.trace() - Complex(1.0, 0.0));
            const double neg = -std::min(0.0, hermitian_eigenvalues(0.5 * (m + m.adjoint())).minCoeff());
            apply_channel(ch, c.rho);
            return std::max({herm, tr, neg});
          },
          [&] { return case_dump(c, i); });
    }
  }
  out.push_back(valid.finish());

  Tracker l1("channels.gad_l1_scaling", 1e-12);
  Tracker threshold("channels.gad_increase_below_threshold", 0.0);
  Tracker scan_closed("channels.scan_closed_form", 1e-10);
  Tracker phase("channels.coherent_ergotropy_phase_free", 1e-12);
  for (std::size_t i = 0; i < o.states_per_dim; ++i) {
    auto rng = case_rng(o.seed, 700, i);
    const double rho11 = uniform(rng, 0.0, 1.0);
    const double ph = uniform(rng, -M_PI, M_PI);
    const double gamma = uniform(rng, 0.0, 1.0);
    const double q = uniform(rng, 0.0, 1.0);
    const StateCase c = make_case(o.seed ^ 0x6ad, 2, i, false);
    auto dump = [&] {
      json j = case_dump(c, i);
      j["rho11"] = rho11;
      j["phase"] = ph;
      j["gamma"] = gamma;
      j["q"] = q;
      return j;
    };
    l1.run(
        [&] {
          const DensityMatrix outp = apply_channel(generalized_amplitude_damping(q, gamma), c.rho);
          return std::abs(l1_coherence(outp) - std::sqrt(1.0 - gamma) * l1_coherence(c.rho));
        },
        dump);
    const auto rows = monotone_counterexample_scan(maximally_coherent_qubit(rho11, ph), gamma, {q});
    const auto& row = rows.front();
    threshold.run(
        [&] {
          if (!(row.diff < -1e-12)) return 0.0;
          return row.p_c && row.purity_out < *row.p_c ? 0.0 : 1.0;
        },
        dump);
    scan_closed.run([&] { return std::abs(row.ec_out - row.ec_out_closed_form); }, dump);
    phase.run(
        [&] {
          const Hamiltonian h({0.0, 1.0});
          return std::abs(coherent_ergotropy(maximally_coherent_qubit(rho11, ph), h) -
                          coherent_ergotropy(maximally_coherent_qubit(rho11, 0.0), h));
        },
        dump);
  }
  out.push_back(l1.finish());
  out.push_back(threshold.finish());
  out.push_back(scan_closed.finish());
  out.push_back(phase.finish());
}

// --- bosonic -----------------------------------------------------------------

void bosonic_checks(const PropertySuiteOptions& o, std::vector<PropertyOutcome>& out) {
  Tracker cov("bosonic.phase_covariance", 1e-8);
  Tracker additivity("bosonic.energy_additivity", 1e-6);
  Tracker saturation("bosonic.upper_bound_saturation", 1e-5);
  const std::size_t n = std::max<std::size_t>(o.states_per_dim / 50, 1);
  for (std::size_t i = 0; i < n; ++i) {
    auto rng = case_rng(o.seed, 800, i);
    const double r = uniform(rng, 0.0, 2.0);
    const double theta = uniform(rng, -M_PI, M_PI);
    const double n_bar = uniform(rng, 0.0, 1.5);
    const DisplacedThermalSpec plain{Complex(r, 0.0), n_bar};
    const DisplacedThermalSpec rotated{std::polar(r, theta), n_bar};
    auto dump = [&] { return json{{"case", i}, {"abs_alpha", r}, {"theta", theta}, {"n_bar", n_bar}}; };
    FockContext ctx;
    std::optional<ErgotropyReport> a;
    try {
      ctx = adaptive_context(plain);
      a = gaussian_ergotropy_report(ctx, plain);
    } catch (const Error&) {
    }
    cov.run(
        [&] {
          if (!a) throw ConvergenceError("no converged truncation");
          const auto b = gaussian_ergotropy_report(ctx, rotated);
          return std::max({std::abs(a->ergotropy - b.ergotropy), std::abs(a->incoherent - b.incoherent),
                           std::abs(a->coherent - b.coherent), std::abs(a->coherence - b.coherence)});
        },
        dump);
    additivity.run(
        [&] {
          if (!a) throw ConvergenceError("no converged truncation");
          return std::abs(a->mean_energy - a->ergotropy - ctx.omega * n_bar);
        },
        dump);
    if (n_bar > 0.05) {
      saturation.run(
          [&] {
            if (!a) throw ConvergenceError("no converged truncation");
            const double beta = beta_from_occupation(n_bar, ctx.omega);
            const auto b = ec_identity_and_bounds(a->state, ctx.hamiltonian(), beta);
            return std::abs(b.scaled_coherent - b.upper);
          },
          dump);
    }
  }
  out.push_back(cov.finish());
  out.push_back(additivity.finish());
  out.push_back(saturation.finish());
}

}  // namespace

Hamiltonian random_hamiltonian(Index dim, std::mt19937_64& rng, double span) {
  std::vector<double> e(static_cast<std::size_t>(dim));
  for (auto& x : e) x = uniform(rng, 0.0, span);
  std::sort(e.begin(), e.end());
  return Hamiltonian(std::move(e));
}

StateCase make_case(std::uint64_t seed, Index dim, std::size_t index, bool full_rank) {
  auto rng = case_rng(seed, static_cast<std::uint64_t>(dim), index);
  const Index rank = full_rank ? dim : 1 + static_cast<Index>(index % static_cast<std::size_t>(dim));
  DensityMatrix rho = random_density_matrix(dim, rank, rng);
  Hamiltonian h = random_hamiltonian(dim, rng);
  return {std::move(rho), std::move(h)};
}

double brute_force_incoherent_ergotropy(const DensityMatrix& rho, const Hamiltonian& h) {
  const RealVector p = rho.populations();
  std::vector<Index> perm(static_cast<std::size_t>(rho.dim()));
  std::iota(perm.begin(), perm.end(), Index{0});
  double best = -kInf;
  do {
    double w = 0.0;
    for (Index k = 0; k < rho.dim(); ++k) w += h.energy(k) * (p(k) - p(perm[static_cast<std::size_t>(k)]));
    best = std::max(best, w);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<PropertyOutcome> run_property_suite(const PropertySuiteOptions& opts) {
  std::vector<PropertyOutcome> out;
  qmat_checks(opts, out);
  states_checks(opts, out);
  coherence_checks(opts, out);
  ergotropy_checks(opts, out);
  channel_checks(opts, out);
  bosonic_checks(opts, out);
  return out;
}

nlohmann::json to_json(const PropertyOutcome& outcome) {
  json j{{"name", outcome.name},
         {"passed", outcome.passed},
         {"cases", outcome.cases},
         {"worst", format_double(outcome.worst)},
         {"tolerance", format_double(outcome.tolerance)}};
  j["counterexample"] = outcome.counterexample ? *outcome.counterexample : json(nullptr);
  return j;
}

}  // namespace ergocoh
