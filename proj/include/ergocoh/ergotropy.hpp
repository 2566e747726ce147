#pragma once

// Ergotropy and its split into incoherent and coherent parts, the inverse
// temperature beta* matching the entropy of a state, the relative-entropy
// identity and bounds for the coherent part, and the bound ergotropy.
//
// Conventions: energies ascending, populations and spectra indexed from 0,
// natural logarithms. beta* = +infinity is the sentinel for states of zero
// entropy.

#include <array>
#include <limits>
#include <optional>
#include <span>

#include "ergocoh/coherence.hpp"
#include "ergocoh/states.hpp"

namespace ergocoh {

inline constexpr double kInfiniteBeta = std::numeric_limits<double>::infinity();

struct PassiveResult {
  DensityMatrix state;       // diag(r_1 >= r_2 >= ...)
  ComplexMatrix unitary;     // E_rho with E_rho rho E_rho^dagger = state
  RealVector spectrum;       // eigenvalues of rho, descending
};

PassiveResult passive_state(const DensityMatrix& rho, const Hamiltonian& h);

/// Tr{H (rho - P_rho)} = sum_k eps_k (rho_kk - r_k).
double ergotropy(const DensityMatrix& rho, const Hamiltonian& h);

/// Work Tr{H (rho - U rho U^dagger)} extracted by a given unitary.
double extracted_work(const DensityMatrix& rho, const Hamiltonian& h, const ComplexMatrix& u);

struct IncoherentPermResult {
  double value;               // E_i
  PermutationUnitary perm;    // sorts populations descending
  DensityMatrix sigma;        // V rho V^dagger
};

/// Incoherent ergotropy via the population-sorting permutation. Ties in the
/// populations are broken by index so sigma is deterministic.
IncoherentPermResult incoherent_ergotropy_perm(const DensityMatrix& rho, const Hamiltonian& h);

struct IncoherentDephasedResult {
  double value;                   // E(Delta rho)
  DensityMatrix dephased;         // delta_rho
  DensityMatrix dephased_passive; // P_delta
};

/// Incoherent ergotropy as the full ergotropy of the dephased state.
IncoherentDephasedResult incoherent_ergotropy_dephased(const DensityMatrix& rho, const Hamiltonian& h);

/// Tr{H (sigma_rho - P_rho)}, computed from sigma's populations and rho's
/// spectrum rather than as a difference of ergotropies.
double coherent_ergotropy(const DensityMatrix& rho, const Hamiltonian& h);

/// Closed form for a qubit with levels (eps_1, eps_1 + gap):
/// (gap/2)(sqrt(2p-1) - sqrt(2p-1-c^2)). Throws DomainError unless
/// 1/2 <= p <= 1 and 0 <= c^2 <= 2p - 1 (small rounding is tolerated).
double qubit_coherent_ergotropy(double purity, double l1, double gap);

/// Solves S(rho_beta) = S(rho) by bracketing and bisection. Returns 0 for a
/// maximally mixed state and kInfiniteBeta for a state of zero entropy or
/// one whose entropy is not reached below beta = 1e6.
double beta_star(const DensityMatrix& rho, const Hamiltonian& h);
double beta_star_for_entropy(double entropy, const Hamiltonian& h);
double beta_star_for_spectrum(std::span<const double> spectrum, const Hamiltonian& h);

/// Tr{H (P_rho - rho_beta*)}; for beta* = inf this is Tr{H P_rho} - eps_1.
double bound_ergotropy(const DensityMatrix& rho, const Hamiltonian& h);
/// (1/beta*) D(P_rho || rho_beta*). Zero when beta* = 0 (then P_rho = rho_0);
/// NaN when beta* is infinite.
double bound_ergotropy_relent(const DensityMatrix& rho, const Hamiltonian& h);

struct CoherentBounds {
  double beta;
  double scaled_coherent;         // beta E_c
  double coherence;               // C(rho)
  double d_dephased_passive;      // D(P_delta || rho_beta)
  double d_passive;               // D(P_rho || rho_beta)
  double lower;                   // C - D(P_rho || rho_beta)
  double upper;                   // C + D(P_delta || rho_beta)
  double identity_residual;       // |beta E_c - C - D(P_delta||.) + D(P_rho||.)|
};

/// Relative-entropy identity for beta E_c and the bounds that follow from
/// it. beta must be finite and non-negative.
CoherentBounds ec_identity_and_bounds(const DensityMatrix& rho, const Hamiltonian& h, double beta);

/// (1/beta)(D(delta_rho||rho_beta) - D(P_delta||rho_beta)); beta > 0.
double incoherent_ergotropy_relent_form(const DensityMatrix& rho, const Hamiltonian& h, double beta);

/// beta E_c - C(rho); its sign is the convertibility witness between P_delta
/// and P_rho under thermal operations at inverse temperature beta.
double athermality_gap(const DensityMatrix& rho, const Hamiltonian& h, double beta);

/// Qutrit with populations (g_1, g_3, g_2) and coherence c between the first
/// two levels, g the Gibbs weights at beta. Saturates the lower bound.
/// Throws DomainError if |c| > sqrt(g_1 g_3).
DensityMatrix qutrit_lower_bound_state(double beta, const std::array<double, 3>& energies, Complex c);

/// Bound ergotropy of a qutrit with spectrum (r1, r2, 1 - r1 - r2) and
/// energies (0, R eps3, eps3) at the given beta*.
double three_level_delta_ec(double r1, double r2, double ratio, double eps3, double beta_star);
/// Same, solving for beta* from the spectrum first.
double three_level_delta_ec(double r1, double r2, double ratio, double eps3);

/// Everything the decomposition produces for one (rho, H).
struct ErgotropyReport {
  Hamiltonian hamiltonian;
  double mean_energy;
  double ergotropy;
  double incoherent;               // permutation route
  double incoherent_dephased;      // dephasing route
  double coherent;
  double beta_star;                // kInfiniteBeta for zero-entropy states
  double bound_ergotropy;
  double bounds_beta;              // beta at which the bounds are evaluated
  std::optional<double> lower_bound;   // C - D(P_rho||rho_beta); bounds beta E_c
  std::optional<double> upper_bound;   // C + D(P_delta||rho_beta)
  std::optional<double> identity_residual;
  double coherence;                // relative entropy of coherence
  double l1_coherence;
  double purity;
  double entropy;
  bool degenerate_hamiltonian;
  PermutationUnitary optimal_perm;
  DensityMatrix state;
  DensityMatrix passive_state;
  DensityMatrix dephased_passive;
  DensityMatrix sigma_state;
  DensityMatrix dephased;
};

/// Runs the full pipeline. Bounds are evaluated at beta* unless
/// bounds_beta is given; they are omitted when that beta is infinite or 0.
ErgotropyReport analyze(const DensityMatrix& rho, const Hamiltonian& h,
                        std::optional<double> bounds_beta = std::nullopt);

}  // namespace ergocoh
