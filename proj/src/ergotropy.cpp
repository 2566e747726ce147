#include "ergocoh/ergotropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ergocoh/errors.hpp"

namespace ergocoh {

namespace {

void require_same_dim(const DensityMatrix& rho, const Hamiltonian& h) {
  if (rho.dim() != h.dim()) {
    throw ValidationError(ValidationError::Kind::DimensionMismatch, "Hamiltonian/state dimension mismatch");
  }
}

// Populations sorted descending, ties by ascending index.
std::vector<Index> descending_population_order(const RealVector& pops) {
  std::vector<Index> order(static_cast<std::size_t>(pops.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return pops(a) > pops(b); });
  return order;
}

constexpr double kBetaCap = 1e6;
constexpr double kZeroEntropy = 1e-13;
constexpr double kEntropyMatchTol = 1e-10;

}  // namespace

PassiveResult passive_state(const DensityMatrix& rho, const Hamiltonian& h) {
  require_same_dim(rho, h);
  const EigenDecomposition eig = hermitian_eig(rho.matrix());
  const Index d = rho.dim();
  RealVector spectrum(d);
  ComplexMatrix unitary(d, d);
  for (Index k = 0; k < d; ++k) {
    spectrum(k) = eig.values(d - 1 - k);
    unitary.row(k) = eig.vectors.col(d - 1 - k).adjoint();
  }
  return PassiveResult{DensityMatrix::diagonal(spectrum), std::move(unitary), std::move(spectrum)};
}

double ergotropy(const DensityMatrix& rho, const Hamiltonian& h) {
  require_same_dim(rho, h);
  const RealVector ev = hermitian_eigenvalues(rho.matrix());
  const Index d = rho.dim();
  double passive_energy = 0.0;
  for (Index k = 0; k < d; ++k) passive_energy += h.energy(k) * ev(d - 1 - k);
  return h.expectation(rho.matrix()) - passive_energy;
}

double extracted_work(const DensityMatrix& rho, const Hamiltonian& h, const ComplexMatrix& u) {
  require_same_dim(rho, h);
  const ComplexMatrix out = u * rho.matrix() * u.adjoint();
  return h.expectation(rho.matrix()) - h.expectation(out);
}

IncoherentPermResult incoherent_ergotropy_perm(const DensityMatrix& rho, const Hamiltonian& h) {
  require_same_dim(rho, h);
  const RealVector pops = rho.populations();
  PermutationUnitary perm(descending_population_order(pops));
  DensityMatrix sigma = apply_permutation(rho, perm);
  double value = 0.0;
  for (Index k = 0; k < rho.dim(); ++k) {
    value += h.energy(k) * (pops(k) - pops(perm.perm()[static_cast<std::size_t>(k)]));
  }
  return IncoherentPermResult{value, std::move(perm), std::move(sigma)};
}

IncoherentDephasedResult incoherent_ergotropy_dephased(const DensityMatrix& rho, const Hamiltonian& h) {
  require_same_dim(rho, h);
  DensityMatrix dephased = dephase(rho);
  PassiveResult passive = passive_state(dephased, h);
  const double value = h.expectation(dephased.matrix()) - h.expectation(passive.spectrum);
  return IncoherentDephasedResult{value, std::move(dephased), std::move(passive.state)};
}

double coherent_ergotropy(const DensityMatrix& rho, const Hamiltonian& h) {
  require_same_dim(rho, h);
  const RealVector pops = rho.populations();
  const auto order = descending_population_order(pops);
  const RealVector ev = hermitian_eigenvalues(rho.matrix());
  const Index d = rho.dim();
  double value = 0.0;
  for (Index k = 0; k < d; ++k) {
    value += h.energy(k) * (pops(order[static_cast<std::size_t>(k)]) - ev(d - 1 - k));
  }
  return value;
}

double qubit_coherent_ergotropy(double purity, double l1, double gap) {
  constexpr double tol = 1e-12;
  if (!(purity >= 0.5 - tol && purity <= 1.0 + tol)) {
    std::ostringstream os;
    os << "qubit purity " << purity << " outside [1/2, 1]";
    throw DomainError(os.str());
  }
  const double a2 = std::max(0.0, 2.0 * purity - 1.0);
  const double rest = a2 - l1 * l1;
  if (l1 < 0.0 || rest < -tol) {
    std::ostringstream os;
    os << "non-physical (purity, l1) pair: c^2 = " << l1 * l1 << " exceeds 2p - 1 = " << a2;
    throw DomainError(os.str());
  }
  return 0.5 * gap * (std::sqrt(a2) - std::sqrt(std::max(0.0, rest)));
}

double beta_star_for_entropy(double entropy, const Hamiltonian& h) {
  if (entropy <= kZeroEntropy) return kInfiniteBeta;
  if (entropy >= gibbs_entropy(0.0, h) - kZeroEntropy) return 0.0;

  double lo = 0.0;
  double hi = 1.0;
  while (gibbs_entropy(hi, h) > entropy) {
    lo = hi;
    hi *= 2.0;
    if (hi > kBetaCap) return kInfiniteBeta;
  }
  // Bisect to the resolution of double precision in beta.
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (gibbs_entropy(mid, h) > entropy) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double beta = 0.5 * (lo + hi);
  const double residual = std::abs(gibbs_entropy(beta, h) - entropy);
  if (residual > kEntropyMatchTol) {
    std::ostringstream os;
    os << "beta* bisection did not converge: bracket [" << lo << ", " << hi << "], entropy residual " << residual;
    throw NumericError(os.str());
  }
  return beta;
}

double beta_star_for_spectrum(std::span<const double> spectrum, const Hamiltonian& h) {
  return beta_star_for_entropy(spectrum_entropy(spectrum), h);
}

double beta_star(const DensityMatrix& rho, const Hamiltonian& h) {
  require_same_dim(rho, h);
  return beta_star_for_entropy(von_neumann_entropy(rho), h);
}

double bound_ergotropy(const DensityMatrix& rho, const Hamiltonian& h) {
  const PassiveResult passive = passive_state(rho, h);
  const double bs = beta_star(rho, h);
  const double passive_energy = h.expectation(passive.spectrum);
  if (std::isinf(bs)) return passive_energy - h.ground_energy();
  return passive_energy - h.expectation(gibbs_populations(bs, h));
}

double bound_ergotropy_relent(const DensityMatrix& rho, const Hamiltonian& h) {
  const double bs = beta_star(rho, h);
  if (std::isinf(bs)) return std::nan("");
  if (bs == 0.0) return 0.0;
  const PassiveResult passive = passive_state(rho, h);
  return relative_entropy_to_gibbs(passive.state, bs, h) / bs;
}

CoherentBounds ec_identity_and_bounds(const DensityMatrix& rho, const Hamiltonian& h, double beta) {
  if (!std::isfinite(beta) || beta < 0.0) {
    throw DomainError("the coherent-ergotropy identity needs a finite beta >= 0");
  }
  const double ec = coherent_ergotropy(rho, h);
  const double c = rel_entropy_coherence(rho);
  const PassiveResult passive = passive_state(rho, h);
  const IncoherentDephasedResult inc = incoherent_ergotropy_dephased(rho, h);
  const double d_delta = relative_entropy_to_gibbs(inc.dephased_passive, beta, h);
  const double d_rho = relative_entropy_to_gibbs(passive.state, beta, h);
  CoherentBounds out{};
  out.beta = beta;
  out.scaled_coherent = beta * ec;
  out.coherence = c;
  out.d_dephased_passive = d_delta;
  out.d_passive = d_rho;
  out.lower = c - d_rho;
  out.upper = c + d_delta;
  out.identity_residual = std::abs(beta * ec - c - d_delta + d_rho);
  return out;
}

double incoherent_ergotropy_relent_form(const DensityMatrix& rho, const Hamiltonian& h, double beta) {
  if (!std::isfinite(beta) || beta <= 0.0) {
    throw DomainError("the relative-entropy form of E_i needs a finite beta > 0");
  }
  const IncoherentDephasedResult inc = incoherent_ergotropy_dephased(rho, h);
  return (relative_entropy_to_gibbs(inc.dephased, beta, h) - relative_entropy_to_gibbs(inc.dephased_passive, beta, h)) /
         beta;
}

double athermality_gap(const DensityMatrix& rho, const Hamiltonian& h, double beta) {
  if (!std::isfinite(beta) || beta <= 0.0) {
    throw DomainError("the athermality gap needs a finite beta > 0");
  }
  return beta * coherent_ergotropy(rho, h) - rel_entropy_coherence(rho);
}

DensityMatrix qutrit_lower_bound_state(double beta, const std::array<double, 3>& energies, Complex c) {
  const Hamiltonian h({energies[0], energies[1], energies[2]});
  const RealVector g = gibbs_populations(beta, h);
  const double cmax = std::sqrt(g(0) * g(2));
  if (std::abs(c) > cmax * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "|c| = " << std::abs(c) << " exceeds sqrt(g1 g3) = " << cmax;
    throw DomainError(os.str());
  }
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = g(0);
  m(1, 1) = g(2);
  m(2, 2) = g(1);
  m(0, 1) = c;
  m(1, 0) = std::conj(c);
  return DensityMatrix::validate(std::move(m));
}

namespace {

void require_three_level_args(double r1, double r2, double ratio) {
  constexpr double tol = 1e-12;
  const double r3 = 1.0 - r1 - r2;
  if (!(r1 >= r2 - tol && r2 >= r3 - tol && r3 >= -tol && r1 <= 1.0 + tol)) {
    std::ostringstream os;
    os << "invalid qutrit spectrum (" << r1 << ", " << r2 << ", " << r3 << "): need r1 >= r2 >= r3 >= 0";
    throw DomainError(os.str());
  }
  if (!(ratio >= 0.0 && ratio <= 1.0)) {
    throw DomainError("energy ratio R must lie in [0, 1]");
  }
}

}  // namespace

double three_level_delta_ec(double r1, double r2, double ratio, double eps3, double beta_star) {
  require_three_level_args(r1, r2, ratio);
  if (std::isnan(beta_star) || beta_star < 0.0) throw DomainError("beta* must be non-negative");
  double thermal_term = 0.0;
  if (!std::isinf(beta_star)) {
    const double a = std::exp(-beta_star * ratio * eps3);
    const double b = std::exp(-beta_star * eps3);
    thermal_term = (ratio * a + b) / (1.0 + a + b);
  }
  return eps3 * (r2 * (ratio - 1.0) + 1.0 - r1 - thermal_term);
}

double three_level_delta_ec(double r1, double r2, double ratio, double eps3) {
  require_three_level_args(r1, r2, ratio);
  const Hamiltonian h({0.0, ratio * eps3, eps3});
  const std::array<double, 3> spectrum{r1, r2, std::max(0.0, 1.0 - r1 - r2)};
  return three_level_delta_ec(r1, r2, ratio, eps3, beta_star_for_spectrum(spectrum, h));
}

ErgotropyReport analyze(const DensityMatrix& rho, const Hamiltonian& h, std::optional<double> bounds_beta) {
  require_same_dim(rho, h);
  const double e = ergotropy(rho, h);
  IncoherentPermResult perm = incoherent_ergotropy_perm(rho, h);
  IncoherentDephasedResult deph = incoherent_ergotropy_dephased(rho, h);
  PassiveResult passive = passive_state(rho, h);
  const double bs = beta_star(rho, h);
  const double beta = bounds_beta.value_or(bs);

  std::optional<double> lower, upper, residual;
  if (std::isfinite(beta) && beta > 0.0) {
    const CoherentBounds b = ec_identity_and_bounds(rho, h, beta);
    lower = b.lower;
    upper = b.upper;
    residual = b.identity_residual;
  }

  return ErgotropyReport{
      h,
      h.expectation(rho.matrix()),
      e,
      perm.value,
      deph.value,
      coherent_ergotropy(rho, h),
      bs,
      bound_ergotropy(rho, h),
      beta,
      lower,
      upper,
      residual,
      rel_entropy_coherence(rho),
      l1_coherence(rho),
      purity(rho),
      von_neumann_entropy(rho),
      h.degenerate(),
      std::move(perm.perm),
      rho,
      std::move(passive.state),
      std::move(deph.dephased_passive),
      std::move(perm.sigma),
      std::move(deph.dephased),
  };
}

}  // namespace ergocoh
