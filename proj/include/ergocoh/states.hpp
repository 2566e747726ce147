#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "ergocoh/qmat.hpp"

namespace ergocoh {

/// Trace and positivity tolerance for density matrices.
inline constexpr double kStateTol = 1e-10;

/// Diagonal Hamiltonian in the computational (energy) basis.
///
/// Energies must be finite and non-decreasing. Degenerate levels are accepted
/// and flagged through degenerate(); the ergotropy pipeline stays well defined
/// but the uniqueness of beta* assumes a non-degenerate spectrum.
class Hamiltonian {
 public:
  explicit Hamiltonian(std::vector<double> energies);

  /// Levels 0, omega, 2 omega, ... (n levels), i.e. omega a^dagger a.
  static Hamiltonian harmonic(Index n, double omega = 1.0);

  Index dim() const noexcept { return static_cast<Index>(energies_.size()); }
  const std::vector<double>& energies() const noexcept { return energies_; }
  double energy(Index k) const { return energies_[static_cast<std::size_t>(k)]; }
  double ground_energy() const noexcept { return energies_.front(); }
  bool degenerate() const noexcept { return degenerate_; }

  Hamiltonian shifted(double offset) const;
  ComplexMatrix matrix() const;

  /// Tr(H M) for a matrix in the energy basis.
  double expectation(const ComplexMatrix& m) const;
  /// sum_k eps_k p_k
  double expectation(const RealVector& populations) const;

 private:
  std::vector<double> energies_;
  bool degenerate_ = false;
};

/// A validated density matrix in the energy basis: Hermitian, unit trace and
/// positive semidefinite, each to kStateTol.
class DensityMatrix {
 public:
  /// Throws ValidationError naming the first violated invariant.
  static DensityMatrix validate(ComplexMatrix m);

  /// Diagonal state with the given populations (validated).
  static DensityMatrix diagonal(const RealVector& populations);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }
  Complex operator()(Index i, Index j) const { return m_(i, j); }
  RealVector populations() const { return m_.diagonal().real(); }

 private:
  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

inline DensityMatrix validate_state(ComplexMatrix m) { return DensityMatrix::validate(std::move(m)); }

struct GibbsSpec {
  double beta;  // inverse energy; +infinity selects the ground-state limit
  Hamiltonian hamiltonian;
};

/// e^{-beta eps_k}/Z, evaluated with the ground energy shifted to zero so no
/// exponent is positive. beta = +inf gives the uniform state on the ground
/// manifold.
RealVector gibbs_populations(double beta, const Hamiltonian& h);
DensityMatrix gibbs_state(const GibbsSpec& spec);

/// -sum g log g of the Gibbs populations, computed from log g directly so
/// tiny weights keep their contribution.
double gibbs_entropy(double beta, const Hamiltonian& h);

/// Natural-log Shannon entropy of a spectrum. Entries in [-kStateTol,
/// kEigenClip] count as zero; anything more negative is a ValidationError.
double spectrum_entropy(std::span<const double> spectrum);

double von_neumann_entropy(const DensityMatrix& rho);
double purity(const DensityMatrix& rho);

/// D(rho||sigma) in nats. Returns +infinity when rho has weight outside the
/// support of sigma (eigenvalues of sigma at or below kEigenClip).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// D(rho||rho_beta) using the exact log rho_beta = -beta (H - eps_1) - log Z.
/// Requires finite beta >= 0.
double relative_entropy_to_gibbs(const DensityMatrix& rho, double beta, const Hamiltonian& h);

/// G G^dagger / Tr(G G^dagger) with G a dim x rank Ginibre matrix.
DensityMatrix random_density_matrix(Index dim, Index rank, std::mt19937_64& rng);
DensityMatrix random_density_matrix(Index dim, Index rank, std::uint64_t seed);

}  // namespace ergocoh
