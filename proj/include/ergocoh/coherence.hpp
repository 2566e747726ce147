#pragma once

#include <vector>

#include "ergocoh/states.hpp"

namespace ergocoh {

/// Energy-basis reshuffling V = sum_k e^{-i phi_k} |k><perm[k]|.
///
/// Indices are 0-based. The matrix is unitary for any bijection, and
/// (V rho V^dagger)_{kk} = rho_{perm[k] perm[k]}.
class PermutationUnitary {
 public:
  explicit PermutationUnitary(std::vector<Index> perm, std::vector<double> phases = {});

  static PermutationUnitary identity(Index dim);

  Index dim() const noexcept { return static_cast<Index>(perm_.size()); }
  const std::vector<Index>& perm() const noexcept { return perm_; }
  const std::vector<double>& phases() const noexcept { return phases_; }
  bool is_identity() const noexcept;

  ComplexMatrix matrix() const;

 private:
  std::vector<Index> perm_;
  std::vector<double> phases_;
};

/// Delta(rho): keep the populations, drop every coherence.
DensityMatrix dephase(const DensityMatrix& rho);

/// C(rho) = S(Delta rho) - S(rho), clamped at zero.
double rel_entropy_coherence(const DensityMatrix& rho);

/// sum_{j != k} |rho_jk|; equals 2|rho_12| for a qubit.
double l1_coherence(const DensityMatrix& rho);

/// V rho V^dagger
DensityMatrix apply_permutation(const DensityMatrix& rho, const PermutationUnitary& v);

/// |psi><psi| with psi = sum_k |k>/sqrt(d).
DensityMatrix maximally_coherent_state(Index dim);

}  // namespace ergocoh
