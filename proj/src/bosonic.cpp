#include "ergocoh/bosonic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ergocoh/errors.hpp"

namespace ergocoh {

namespace {

constexpr double kConvergenceTol = 1e-6;
constexpr Index kTailWindow = 5;
constexpr Index kCheckStep = 20;

void require_context(const FockContext& ctx) {
  if (ctx.n_max < 2) throw DomainError("Fock truncation needs at least two levels");
  if (!(ctx.omega > 0.0) || !std::isfinite(ctx.omega)) throw DomainError("mode frequency must be positive");
}

void require_spec(const DisplacedThermalSpec& spec) {
  if (!(spec.n_bar >= 0.0) || !std::isfinite(spec.n_bar)) {
    throw DomainError("thermal occupation must be finite and non-negative");
  }
  if (!std::isfinite(spec.alpha.real()) || !std::isfinite(spec.alpha.imag())) {
    throw DomainError("displacement must be finite");
  }
}

ComplexMatrix displaced_thermal_matrix(const FockContext& ctx, const DisplacedThermalSpec& spec) {
  const ComplexMatrix d = displacement_matrix(ctx, spec.alpha);
  const RealVector th = thermal_populations(ctx, spec.n_bar);
  ComplexMatrix rho = d * th.asDiagonal() * d.adjoint();
  return 0.5 * (rho + rho.adjoint());
}

double tail_population(const ComplexMatrix& rho) {
  const Index n = rho.rows();
  double tail = 0.0;
  for (Index k = std::max<Index>(0, n - kTailWindow); k < n; ++k) tail += rho(k, k).real();
  return tail;
}

double log_sum_exp(const std::vector<double>& xs) {
  if (xs.empty()) return -std::numeric_limits<double>::infinity();
  const double m = *std::max_element(xs.begin(), xs.end());
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

}  // namespace

Hamiltonian FockContext::hamiltonian() const { return Hamiltonian::harmonic(n_max, omega); }

double beta_from_occupation(double n_bar, double omega) {
  if (!(n_bar >= 0.0)) throw DomainError("thermal occupation must be non-negative");
  if (n_bar == 0.0) return std::numeric_limits<double>::infinity();
  return std::log1p(1.0 / n_bar) / omega;
}

ComplexMatrix annihilation_matrix(const FockContext& ctx) {
  require_context(ctx);
  ComplexMatrix a = ComplexMatrix::Zero(ctx.n_max, ctx.n_max);
  for (Index k = 1; k < ctx.n_max; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

ComplexMatrix displacement_matrix(const FockContext& ctx, Complex alpha) {
  const ComplexMatrix a = annihilation_matrix(ctx);
  const ComplexMatrix gen = alpha * a - std::conj(alpha) * a.adjoint();
  return matrix_exp(gen);
}

RealVector thermal_populations(const FockContext& ctx, double n_bar) {
  require_context(ctx);
  if (!(n_bar >= 0.0)) throw DomainError("thermal occupation must be non-negative");
  RealVector p = RealVector::Zero(ctx.n_max);
  if (n_bar == 0.0) {
    p(0) = 1.0;
    return p;
  }
  const double ratio = n_bar / (n_bar + 1.0);
  double w = 1.0;
  for (Index k = 0; k < ctx.n_max; ++k) {
    p(k) = w;
    w *= ratio;
  }
  return p / p.sum();
}

RealVector displaced_thermal_number_distribution(const DisplacedThermalSpec& spec, Index count) {
  require_spec(spec);
  const double a2 = std::norm(spec.alpha);
  const double nb = spec.n_bar;
  RealVector p(count);
  for (Index n = 0; n < count; ++n) {
    // P(n) = e^{-A/(1+nb)} (1+nb)^{-(n+1)} sum_k C(n,k) nb^{n-k} (A/(1+nb))^k / k!
    std::vector<double> terms;
    for (Index k = 0; k <= n; ++k) {
      if (nb == 0.0 && k != n) continue;
      if (a2 == 0.0 && k != 0) continue;
      const double dn = static_cast<double>(n);
      const double dk = static_cast<double>(k);
      double t = std::lgamma(dn + 1.0) - 2.0 * std::lgamma(dk + 1.0) - std::lgamma(dn - dk + 1.0);
      if (n - k > 0) t += (dn - dk) * std::log(nb);
      if (k > 0) t += dk * std::log(a2 / (1.0 + nb));
      terms.push_back(t);
    }
    const double log_p =
        -a2 / (1.0 + nb) - static_cast<double>(n + 1) * std::log1p(nb) + log_sum_exp(terms);
    p(n) = std::exp(log_p);
  }
  return p;
}

DensityMatrix displaced_thermal_state(const FockContext& ctx, const DisplacedThermalSpec& spec) {
  require_context(ctx);
  require_spec(spec);
  const double deficit =
      std::max(0.0, 1.0 - displaced_thermal_number_distribution(spec, ctx.n_max).sum());
  ComplexMatrix rho = displaced_thermal_matrix(ctx, spec);
  const double tail = tail_population(rho);
  if (deficit > kConvergenceTol || tail > kConvergenceTol) {
    std::ostringstream os;
    os << "Fock truncation N = " << ctx.n_max << " is too small for |alpha| = " << std::abs(spec.alpha)
       << ", n_bar = " << spec.n_bar << " (population beyond cutoff " << deficit << ", tail " << tail
       << "); increase N";
    throw ConvergenceError(os.str());
  }
  return DensityMatrix::validate(std::move(rho));
}

ConvergenceDiagnostics convergence_check(const FockContext& ctx, const DisplacedThermalSpec& spec) {
  require_context(ctx);
  require_spec(spec);
  ConvergenceDiagnostics out{};
  out.n_max = ctx.n_max;
  out.trace_deficit = std::max(0.0, 1.0 - displaced_thermal_number_distribution(spec, ctx.n_max).sum());

  const ComplexMatrix rho = displaced_thermal_matrix(ctx, spec);
  out.tail_population = tail_population(rho);

  const FockContext bigger{ctx.n_max + kCheckStep, ctx.omega};
  const ComplexMatrix rho_big = displaced_thermal_matrix(bigger, spec);
  const double inf = std::numeric_limits<double>::infinity();
  try {
    const DensityMatrix small_state = DensityMatrix::validate(rho);
    const DensityMatrix big_state = DensityMatrix::validate(rho_big);
    const Hamiltonian h = ctx.hamiltonian();
    const Hamiltonian hb = bigger.hamiltonian();
    out.delta_ergotropy = std::abs(ergotropy(big_state, hb) - ergotropy(small_state, h));
    out.delta_coherent = std::abs(coherent_ergotropy(big_state, hb) - coherent_ergotropy(small_state, h));
  } catch (const ValidationError&) {
    out.delta_ergotropy = inf;
    out.delta_coherent = inf;
  }
  out.converged = out.trace_deficit < kConvergenceTol && out.tail_population < kConvergenceTol &&
                  out.delta_ergotropy < kConvergenceTol && out.delta_coherent < kConvergenceTol;
  return out;
}

ErgotropyReport gaussian_ergotropy_report(const FockContext& ctx, const DisplacedThermalSpec& spec) {
  const DensityMatrix rho = displaced_thermal_state(ctx, spec);
  return analyze(rho, ctx.hamiltonian());
}

FockContext adaptive_context(const DisplacedThermalSpec& spec, double omega, Index start, Index max_n) {
  require_spec(spec);
  const double a2 = std::norm(spec.alpha);
  const double nb = spec.n_bar;
  const double spread = std::sqrt(a2 * (2.0 * nb + 1.0) + nb * (nb + 1.0));
  const double guess = a2 + nb + 10.0 * spread + 20.0;
  Index n = std::max<Index>(start, static_cast<Index>(std::ceil(guess / kCheckStep)) * kCheckStep);
  ConvergenceDiagnostics last{};
  for (; n <= max_n; n += kCheckStep) {
    last = convergence_check(FockContext{n, omega}, spec);
    if (last.converged) return FockContext{n, omega};
  }
  std::ostringstream os;
  os << "no Fock truncation up to N = " << max_n << " converges for |alpha| = " << std::abs(spec.alpha)
     << ", n_bar = " << nb << " (last: deficit " << last.trace_deficit << ", tail " << last.tail_population
     << ", dE " << last.delta_ergotropy << ", dEc " << last.delta_coherent << ")";
  throw ConvergenceError(os.str());
}

}  // namespace ergocoh
