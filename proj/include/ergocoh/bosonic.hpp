#pragma once

// Single bosonic mode on the truncated Fock space {|0>, ..., |N-1>} with
// H = omega a^dagger a (zero-point energy dropped).
//
// The displacement operator follows D(alpha) = exp(alpha a - alpha* a^dagger),
// the complex conjugate of the more common exp(alpha a^dagger - alpha* a).
// Displacing by alpha here equals the usual displacement by -alpha*, so
// number-basis populations and every ergotropy quantity depend on |alpha|
// only.

#include <optional>

#include "ergocoh/ergotropy.hpp"

namespace ergocoh {

struct FockContext {
  Index n_max = 60;    // truncation dimension N
  double omega = 1.0;  // energy quantum

  Hamiltonian hamiltonian() const;
};

struct DisplacedThermalSpec {
  Complex alpha{0.0, 0.0};
  double n_bar = 0.0;  // thermal occupation; 0 gives a coherent state
};

/// beta = log(1 + 1/n_bar)/omega; +infinity for n_bar = 0.
double beta_from_occupation(double n_bar, double omega);

/// N x N lowering operator, sqrt(k) on the first superdiagonal.
ComplexMatrix annihilation_matrix(const FockContext& ctx);

/// exp(alpha a - alpha* a^dagger) in the truncated space (exactly unitary).
ComplexMatrix displacement_matrix(const FockContext& ctx, Complex alpha);

/// Truncated thermal populations n^k/(n+1)^{k+1}, renormalised on N levels.
RealVector thermal_populations(const FockContext& ctx, double n_bar);

/// Number distribution of the untruncated displaced thermal state for
/// levels 0..count-1 (Laguerre form; Poisson for n_bar = 0).
RealVector displaced_thermal_number_distribution(const DisplacedThermalSpec& spec, Index count);

/// D(alpha) rho_beta D(alpha)^dagger. Throws ConvergenceError when the
/// truncation visibly fails (target population beyond level N-1 or tail
/// population near the cutoff above 1e-6).
DensityMatrix displaced_thermal_state(const FockContext& ctx, const DisplacedThermalSpec& spec);

struct ConvergenceDiagnostics {
  Index n_max;
  double trace_deficit;     // 1 - sum_{n<N} P_exact(n)
  double tail_population;   // population of levels >= N-5 in the truncated state
  double delta_ergotropy;   // |E(N+20) - E(N)|
  double delta_coherent;    // |E_c(N+20) - E_c(N)|
  bool converged;           // every entry below 1e-6
};

ConvergenceDiagnostics convergence_check(const FockContext& ctx, const DisplacedThermalSpec& spec);

/// Full decomposition of a displaced thermal state on the given truncation.
ErgotropyReport gaussian_ergotropy_report(const FockContext& ctx, const DisplacedThermalSpec& spec);

/// Smallest N >= max(start, heuristic) on the +20 ladder that passes
/// convergence_check; throws ConvergenceError past max_n.
FockContext adaptive_context(const DisplacedThermalSpec& spec, double omega = 1.0, Index start = 60,
                             Index max_n = 200);

}  // namespace ergocoh
