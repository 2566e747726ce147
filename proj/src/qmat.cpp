#include "ergocoh/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "ergocoh/errors.hpp"

namespace ergocoh {

const char* to_string(ValidationError::Kind kind) noexcept {
  using K = ValidationError::Kind;
  switch (kind) {
    case K::NotSquare: return "not_square";
    case K::DimensionMismatch: return "dimension_mismatch";
    case K::NonHermitian: return "non_hermitian";
    case K::TraceNotOne: return "trace_not_one";
    case K::NegativeEigenvalue: return "negative_eigenvalue";
    case K::NotAscending: return "not_ascending";
    case K::NotFinite: return "not_finite";
    case K::IncompleteChannel: return "incomplete_channel";
    case K::BadPermutation: return "bad_permutation";
    case K::Parse: return "parse_error";
  }
  return "unknown";
}

double max_asymmetry(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw ValidationError(ValidationError::Kind::NotSquare, "matrix is not square");
  }
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

namespace {

void require_hermitian(const ComplexMatrix& m) {
  if (m.rows() == 0) {
    throw ValidationError(ValidationError::Kind::NotSquare, "matrix is empty");
  }
  if (!m.allFinite()) {
    throw ValidationError(ValidationError::Kind::NotFinite, "matrix has non-finite entries");
  }
  const double asym = max_asymmetry(m);
  if (asym > kHermitianTol) {
    std::ostringstream os;
    os << "matrix is not Hermitian: max |M - M^dagger| = " << asym;
    throw ValidationError(ValidationError::Kind::NonHermitian, os.str());
  }
}

}  // namespace

EigenDecomposition hermitian_eig(const ComplexMatrix& m) {
  require_hermitian(m);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NumericError("Hermitian eigensolver did not converge");
  }
  const RealVector& raw = solver.eigenvalues();
  std::vector<Index> order(static_cast<std::size_t>(raw.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return raw(a) < raw(b); });

  EigenDecomposition out{RealVector(raw.size()), ComplexMatrix(m.rows(), m.cols())};
  for (Index k = 0; k < raw.size(); ++k) {
    out.values(k) = raw(order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = solver.eigenvectors().col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  require_hermitian(m);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("Hermitian eigensolver did not converge");
  }
  RealVector values = solver.eigenvalues();
  std::sort(values.begin(), values.end());
  return values;
}

ComplexMatrix matrix_exp(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw ValidationError(ValidationError::Kind::NotSquare, "matrix_exp needs a square matrix");
  }
  return m.exp();
}

ComplexMatrix spectral_apply(const EigenDecomposition& eig, const std::function<double(double)>& f) {
  RealVector mapped(eig.values.size());
  for (Index k = 0; k < eig.values.size(); ++k) {
    double lambda = eig.values(k);
    if (std::abs(lambda) <= kEigenClip) lambda = 0.0;
    const double y = f(lambda);
    if (!std::isfinite(y)) {
      std::ostringstream os;
      os << "function undefined at eigenvalue " << lambda;
      throw DomainError(os.str());
    }
    mapped(k) = y;
  }
  return eig.vectors * mapped.asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix spectral_apply(const ComplexMatrix& m, const std::function<double(double)>& f) {
  return spectral_apply(hermitian_eig(m), f);
}

double xlogx(double x) noexcept {
  if (x == 0.0) return 0.0;
  if (x < 0.0) return std::nan("");
  return x * std::log(x);
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a.cwiseProduct(b.transpose()).sum();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError(ValidationError::Kind::DimensionMismatch, "shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

ComplexMatrix ginibre(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix g(rows, cols);
  // Fill row by row so the draw order does not depend on Eigen's storage.
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

ComplexMatrix random_unitary(Index dim, std::mt19937_64& rng) {
  const ComplexMatrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < dim; ++k) {
    const Complex d = r(k, k);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(k) *= d / mag;
  }
  return q;
}

ComplexMatrix random_hermitian(Index dim, std::mt19937_64& rng) {
  const ComplexMatrix g = ginibre(dim, dim, rng);
  return 0.5 * (g + g.adjoint());
}

}  // namespace ergocoh
