#pragma once

// Dense complex matrix kernel. Everything is a thin layer over Eigen; the
// functions here fix the conventions (ordering, clipping, validation) that
// the rest of the library relies on.

#include <complex>
#include <cstdint>
#include <functional>
#include <random>

#include <Eigen/Dense>

namespace ergocoh {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Elementwise tolerance for Hermiticity checks.
inline constexpr double kHermitianTol = 1e-10;
/// Eigenvalues with magnitude at or below this are treated as exact zeros.
inline constexpr double kEigenClip = 1e-12;

/// Ascending eigenvalues and the unitary whose columns are the eigenvectors.
struct EigenDecomposition {
  RealVector values;
  ComplexMatrix vectors;
};

/// max_ij |M_ij - conj(M_ji)|
double max_asymmetry(const ComplexMatrix& m);

/// Eigendecomposition of a Hermitian matrix. Eigenvalues come out ascending;
/// ties keep the solver's order (stable sort on value, then index).
/// Throws ValidationError if M is not Hermitian to kHermitianTol.
EigenDecomposition hermitian_eig(const ComplexMatrix& m);

/// Eigenvalues only, ascending.
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

/// exp(M) by Pade scaling-and-squaring.
ComplexMatrix matrix_exp(const ComplexMatrix& m);

/// V f(Lambda) V^dagger for Hermitian M. Eigenvalues in [-kEigenClip,
/// kEigenClip] are replaced by exactly 0 before f is applied. Throws
/// DomainError if f returns a non-finite value.
ComplexMatrix spectral_apply(const ComplexMatrix& m, const std::function<double(double)>& f);
ComplexMatrix spectral_apply(const EigenDecomposition& eig, const std::function<double(double)>& f);

/// x log x with the 0 log 0 = 0 convention. NaN for x < 0.
double xlogx(double x) noexcept;

/// Tr(A B) without forming the product.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// max_ij |A_ij - B_ij|
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// dim x cols matrix of i.i.d. standard complex Gaussians (real and imaginary
/// parts each N(0, 1/2)).
ComplexMatrix ginibre(Index rows, Index cols, std::mt19937_64& rng);

/// Haar-random unitary (QR of a Ginibre matrix with the phase fix on R).
ComplexMatrix random_unitary(Index dim, std::mt19937_64& rng);

/// (G + G^dagger)/2 for a Ginibre G.
ComplexMatrix random_hermitian(Index dim, std::mt19937_64& rng);

}  // namespace ergocoh
