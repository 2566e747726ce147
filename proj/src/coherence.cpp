#include "ergocoh/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ergocoh/errors.hpp"

namespace ergocoh {

PermutationUnitary::PermutationUnitary(std::vector<Index> perm, std::vector<double> phases)
    : perm_(std::move(perm)), phases_(std::move(phases)) {
  if (perm_.empty()) {
    throw ValidationError(ValidationError::Kind::BadPermutation, "empty permutation");
  }
  if (phases_.empty()) phases_.assign(perm_.size(), 0.0);
  if (phases_.size() != perm_.size()) {
    throw ValidationError(ValidationError::Kind::BadPermutation, "one phase per level is required");
  }
  std::vector<bool> seen(perm_.size(), false);
  for (Index p : perm_) {
    if (p < 0 || p >= dim() || seen[static_cast<std::size_t>(p)]) {
      throw ValidationError(ValidationError::Kind::BadPermutation, "permutation is not a bijection");
    }
    seen[static_cast<std::size_t>(p)] = true;
  }
}

PermutationUnitary PermutationUnitary::identity(Index dim) {
  std::vector<Index> p(static_cast<std::size_t>(dim));
  std::iota(p.begin(), p.end(), Index{0});
  return PermutationUnitary(std::move(p));
}

bool PermutationUnitary::is_identity() const noexcept {
  for (std::size_t k = 0; k < perm_.size(); ++k) {
    if (perm_[k] != static_cast<Index>(k) || phases_[k] != 0.0) return false;
  }
  return true;
}

ComplexMatrix PermutationUnitary::matrix() const {
  ComplexMatrix v = ComplexMatrix::Zero(dim(), dim());
  for (Index k = 0; k < dim(); ++k) {
    v(k, perm_[static_cast<std::size_t>(k)]) = std::polar(1.0, -phases_[static_cast<std::size_t>(k)]);
  }
  return v;
}

DensityMatrix dephase(const DensityMatrix& rho) { return DensityMatrix::diagonal(rho.populations()); }

double rel_entropy_coherence(const DensityMatrix& rho) {
  const RealVector p = rho.populations();
  const double s_dephased = spectrum_entropy(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())));
  return std::max(0.0, s_dephased - von_neumann_entropy(rho));
}

double l1_coherence(const DensityMatrix& rho) {
  return rho.matrix().cwiseAbs().sum() - rho.matrix().diagonal().cwiseAbs().sum();
}

DensityMatrix apply_permutation(const DensityMatrix& rho, const PermutationUnitary& v) {
  if (v.dim() != rho.dim()) {
    throw ValidationError(ValidationError::Kind::DimensionMismatch, "permutation/state dimension mismatch");
  }
  // Entrywise: (V rho V^dagger)_{jk} = e^{-i(phi_j - phi_k)} rho_{pi_j pi_k}.
  const auto& p = v.perm();
  const auto& phi = v.phases();
  ComplexMatrix out(rho.dim(), rho.dim());
  for (Index j = 0; j < rho.dim(); ++j) {
    for (Index k = 0; k < rho.dim(); ++k) {
      const auto uj = static_cast<std::size_t>(j);
      const auto uk = static_cast<std::size_t>(k);
      out(j, k) = std::polar(1.0, phi[uk] - phi[uj]) * rho(p[uj], p[uk]);
    }
  }
  return DensityMatrix::validate(std::move(out));
}

DensityMatrix maximally_coherent_state(Index dim) {
  ComplexMatrix m = ComplexMatrix::Constant(dim, dim, Complex(1.0 / static_cast<double>(dim), 0.0));
  return DensityMatrix::validate(std::move(m));
}

}  // namespace ergocoh
