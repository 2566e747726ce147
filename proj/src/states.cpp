#include "ergocoh/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ergocoh/errors.hpp"

namespace ergocoh {

Hamiltonian::Hamiltonian(std::vector<double> energies) : energies_(std::move(energies)) {
  if (energies_.empty()) {
    throw ValidationError(ValidationError::Kind::NotSquare, "Hamiltonian needs at least one level");
  }
  for (std::size_t k = 0; k < energies_.size(); ++k) {
    if (!std::isfinite(energies_[k])) {
      throw ValidationError(ValidationError::Kind::NotFinite, "Hamiltonian energies must be finite");
    }
    if (k > 0 && energies_[k] < energies_[k - 1]) {
      std::ostringstream os;
      os << "energies must be ascending: eps[" << k << "] = " << energies_[k] << " < eps[" << k - 1
         << "] = " << energies_[k - 1];
      throw ValidationError(ValidationError::Kind::NotAscending, os.str());
    }
    if (k > 0 && energies_[k] == energies_[k - 1]) degenerate_ = true;
  }
}

Hamiltonian Hamiltonian::harmonic(Index n, double omega) {
  std::vector<double> e(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) e[static_cast<std::size_t>(k)] = omega * static_cast<double>(k);
  return Hamiltonian(std::move(e));
}

Hamiltonian Hamiltonian::shifted(double offset) const {
  std::vector<double> e = energies_;
  for (double& x : e) x += offset;
  return Hamiltonian(std::move(e));
}

ComplexMatrix Hamiltonian::matrix() const {
  ComplexMatrix h = ComplexMatrix::Zero(dim(), dim());
  for (Index k = 0; k < dim(); ++k) h(k, k) = energy(k);
  return h;
}

double Hamiltonian::expectation(const ComplexMatrix& m) const {
  if (m.rows() != dim() || m.cols() != dim()) {
    throw ValidationError(ValidationError::Kind::DimensionMismatch, "Hamiltonian/state dimension mismatch");
  }
  double e = 0.0;
  for (Index k = 0; k < dim(); ++k) e += energy(k) * m(k, k).real();
  return e;
}

double Hamiltonian::expectation(const RealVector& populations) const {
  if (populations.size() != dim()) {
    throw ValidationError(ValidationError::Kind::DimensionMismatch, "Hamiltonian/population dimension mismatch");
  }
  double e = 0.0;
  for (Index k = 0; k < dim(); ++k) e += energy(k) * populations(k);
  return e;
}

DensityMatrix DensityMatrix::validate(ComplexMatrix m) {
  using K = ValidationError::Kind;
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ValidationError(K::NotSquare, "density matrix must be square and non-empty");
  }
  if (!m.allFinite()) {
    throw ValidationError(K::NotFinite, "density matrix has non-finite entries");
  }
  const double asym = max_asymmetry(m);
  if (asym > kStateTol) {
    std::ostringstream os;
    os << "density matrix is not Hermitian: max |rho - rho^dagger| = " << asym;
    throw ValidationError(K::NonHermitian, os.str());
  }
  const Complex tr = m.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kStateTol) {
    std::ostringstream os;
    os.precision(17);
    os << "density matrix trace is " << tr.real() << " (expected 1)";
    throw ValidationError(K::TraceNotOne, os.str());
  }
  const RealVector ev = hermitian_eigenvalues(m);
  if (ev(0) < -kStateTol) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << ev(0);
    throw ValidationError(K::NegativeEigenvalue, os.str());
  }
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::diagonal(const RealVector& populations) {
  ComplexMatrix m = ComplexMatrix::Zero(populations.size(), populations.size());
  for (Index k = 0; k < populations.size(); ++k) m(k, k) = populations(k);
  return validate(std::move(m));
}

RealVector gibbs_populations(double beta, const Hamiltonian& h) {
  if (std::isnan(beta) || beta < 0.0) {
    throw DomainError("inverse temperature must be non-negative");
  }
  const Index d = h.dim();
  const double e0 = h.ground_energy();
  RealVector w(d);
  if (std::isinf(beta)) {
    for (Index k = 0; k < d; ++k) w(k) = h.energy(k) == e0 ? 1.0 : 0.0;
  } else {
    for (Index k = 0; k < d; ++k) w(k) = std::exp(-beta * (h.energy(k) - e0));
  }
  return w / w.sum();
}

DensityMatrix gibbs_state(const GibbsSpec& spec) {
  return DensityMatrix::diagonal(gibbs_populations(spec.beta, spec.hamiltonian));
}

double gibbs_entropy(double beta, const Hamiltonian& h) {
  if (std::isnan(beta) || beta < 0.0) {
    throw DomainError("inverse temperature must be non-negative");
  }
  const double e0 = h.ground_energy();
  if (std::isinf(beta)) {
    const auto n = std::count(h.energies().begin(), h.energies().end(), e0);
    return std::log(static_cast<double>(n));
  }
  // S = beta <H - e0> + log Z', Z' = sum exp(-beta (eps - e0)) >= 1.
  double z = 0.0;
  double mean = 0.0;
  for (double e : h.energies()) {
    const double x = beta * (e - e0);
    const double w = std::exp(-x);
    z += w;
    mean += x * w;
  }
  return mean / z + std::log(z);
}

double spectrum_entropy(std::span<const double> spectrum) {
  double s = 0.0;
  for (double r : spectrum) {
    if (r < -kStateTol) {
      std::ostringstream os;
      os << "negative eigenvalue " << r << " in entropy argument";
      throw ValidationError(ValidationError::Kind::NegativeEigenvalue, os.str());
    }
    if (r <= kEigenClip) continue;
    s -= r * std::log(r);
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const RealVector ev = hermitian_eigenvalues(rho.matrix());
  return spectrum_entropy(std::span<const double>(ev.data(), static_cast<std::size_t>(ev.size())));
}

double purity(const DensityMatrix& rho) { return rho.matrix().cwiseAbs2().sum(); }

namespace {

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    throw ValidationError(ValidationError::Kind::DimensionMismatch, "states have different dimensions");
  }
}

}  // namespace

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  const double neg_s = -von_neumann_entropy(rho);
  const EigenDecomposition es = hermitian_eig(sigma.matrix());
  double cross = 0.0;  // Tr(rho log sigma)
  for (Index j = 0; j < es.values.size(); ++j) {
    const auto v = es.vectors.col(j);
    const double weight = (v.adjoint() * rho.matrix() * v)(0, 0).real();
    if (es.values(j) <= kEigenClip) {
      if (weight > kEigenClip) return std::numeric_limits<double>::infinity();
      continue;
    }
    cross += weight * std::log(es.values(j));
  }
  return std::max(0.0, neg_s - cross);
}

double relative_entropy_to_gibbs(const DensityMatrix& rho, double beta, const Hamiltonian& h) {
  if (rho.dim() != h.dim()) {
    throw ValidationError(ValidationError::Kind::DimensionMismatch, "Hamiltonian/state dimension mismatch");
  }
  if (!std::isfinite(beta) || beta < 0.0) {
    throw DomainError("relative entropy to a Gibbs state needs finite beta >= 0");
  }
  const double e0 = h.ground_energy();
  double z = 0.0;
  for (double e : h.energies()) z += std::exp(-beta * (e - e0));
  const double shifted_energy = h.expectation(rho.matrix()) - e0;
  const double d = -von_neumann_entropy(rho) + beta * shifted_energy + std::log(z);
  return std::max(0.0, d);
}

DensityMatrix random_density_matrix(Index dim, Index rank, std::mt19937_64& rng) {
  if (dim < 1 || rank < 1 || rank > dim) {
    throw DomainError("random_density_matrix needs 1 <= rank <= dim");
  }
  const ComplexMatrix g = ginibre(dim, rank, rng);
  ComplexMatrix m = g * g.adjoint();
  m /= m.trace().real();
  // Remove rounding asymmetry before validation.
  m = 0.5 * (m + m.adjoint()).eval();
  return DensityMatrix::validate(std::move(m));
}

DensityMatrix random_density_matrix(Index dim, Index rank, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_density_matrix(dim, rank, rng);
}

}  // namespace ergocoh
