#include "ergocoh/channels.hpp"

#include <cmath>
#include <sstream>

#include "ergocoh/coherence.hpp"
#include "ergocoh/ergotropy.hpp"
#include "ergocoh/errors.hpp"

namespace ergocoh {

KrausChannel::KrausChannel(std::vector<ComplexMatrix> operators) : operators_(std::move(operators)) {
  using K = ValidationError::Kind;
  if (operators_.empty()) throw ValidationError(K::IncompleteChannel, "channel has no Kraus operators");
  const Index d = operators_.front().rows();
  for (const auto& e : operators_) {
    if (e.rows() != d || e.cols() != d) {
      throw ValidationError(K::DimensionMismatch, "Kraus operators must all be square of equal size");
    }
  }
  const double res = completeness_residual();
  if (res > kChannelTol) {
    std::ostringstream os;
    os << "Kraus operators violate completeness: residual " << res;
    throw ValidationError(K::IncompleteChannel, os.str());
  }
}

double KrausChannel::completeness_residual() const {
  const Index d = dim();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& e : operators_) sum += e.adjoint() * e;
  return max_abs_diff(sum, ComplexMatrix::Identity(d, d));
}

KrausChannel KrausChannel::identity(Index dim) { return KrausChannel({ComplexMatrix::Identity(dim, dim)}); }

KrausChannel KrausChannel::full_dephasing(Index dim) {
  std::vector<ComplexMatrix> ops;
  for (Index k = 0; k < dim; ++k) {
    ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
    p(k, k) = 1.0;
    ops.push_back(std::move(p));
  }
  return KrausChannel(std::move(ops));
}

KrausChannel KrausChannel::unitary(const ComplexMatrix& u) { return KrausChannel({u}); }

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho) {
  if (ch.dim() != rho.dim()) {
    throw ValidationError(ValidationError::Kind::DimensionMismatch, "channel/state dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (const auto& e : ch.operators()) out += e * rho.matrix() * e.adjoint();
  return DensityMatrix::validate(std::move(out));
}

KrausChannel generalized_amplitude_damping(double q, double gamma) {
  if (!(q >= 0.0 && q <= 1.0) || !(gamma >= 0.0 && gamma <= 1.0)) {
    throw DomainError("generalized amplitude damping needs q and gamma in [0, 1]");
  }
  const double sq = std::sqrt(q);
  const double sp = std::sqrt(1.0 - q);
  const double sg = std::sqrt(gamma);
  const double sd = std::sqrt(1.0 - gamma);
  ComplexMatrix e0 = ComplexMatrix::Zero(2, 2);
  ComplexMatrix e1 = ComplexMatrix::Zero(2, 2);
  ComplexMatrix e2 = ComplexMatrix::Zero(2, 2);
  ComplexMatrix e3 = ComplexMatrix::Zero(2, 2);
  e0(0, 0) = sq;
  e0(1, 1) = sq * sd;
  e1(0, 1) = sq * sg;
  e2(0, 0) = sp * sd;
  e2(1, 1) = sp;
  e3(1, 0) = sp * sg;
  return KrausChannel({e0, e1, e2, e3});
}

IncoherenceWitness check_incoherent_operation(const KrausChannel& ch) {
  constexpr double tol = 1e-10;
  IncoherenceWitness w;
  const Index d = ch.dim();
  for (std::size_t j = 0; j < ch.operators().size(); ++j) {
    const ComplexMatrix& e = ch.operators()[j];
    for (Index k = 0; k < d; ++k) {
      // E |k><k| E^dagger = |e_k><e_k| with e_k the k-th column.
      const ComplexVector col = e.col(k);
      const ComplexMatrix out = col * col.adjoint();
      const double mass = out.cwiseAbs().sum() - out.diagonal().cwiseAbs().sum();
      if (mass >= tol) {
        w.incoherent = false;
        w.kraus_index = j;
        w.basis_index = k;
        w.off_diagonal_mass = mass;
        return w;
      }
      w.off_diagonal_mass = std::max(w.off_diagonal_mass, mass);
    }
  }
  return w;
}

DensityMatrix maximally_coherent_qubit(double rho11, double phase) {
  if (!(rho11 >= 0.0 && rho11 <= 1.0)) throw DomainError("rho11 must lie in [0, 1]");
  const double rho22 = 1.0 - rho11;
  const Complex c = std::polar(std::sqrt(rho11 * rho22), phase);
  ComplexMatrix m(2, 2);
  m << rho11, c, std::conj(c), rho22;
  return DensityMatrix::validate(std::move(m));
}

std::vector<MonotoneScanRow> monotone_counterexample_scan(const DensityMatrix& rho0, double gamma,
                                                          const std::vector<double>& q_grid, const Hamiltonian& h) {
  if (rho0.dim() != 2 || h.dim() != 2) {
    throw ValidationError(ValidationError::Kind::DimensionMismatch, "the GAD scan is defined for qubits");
  }
  const double gap = h.energy(1) - h.energy(0);
  const double ec_in = coherent_ergotropy(rho0, h);
  std::vector<MonotoneScanRow> rows;
  rows.reserve(q_grid.size());
  for (double q : q_grid) {
    const DensityMatrix out = apply_channel(generalized_amplitude_damping(q, gamma), rho0);
    MonotoneScanRow row{};
    row.q = q;
    row.ec_in = ec_in;
    row.ec_out = coherent_ergotropy(out, h);
    row.diff = ec_in - row.ec_out;
    row.purity_out = purity(out);
    row.l1_out = l1_coherence(out);
    if (ec_in > 0.0 && gap > 0.0) {
      const double t = ec_in / gap + row.l1_out * row.l1_out * gap / (4.0 * ec_in);
      row.p_c = 0.5 + 0.5 * t * t;
    }
    row.ec_out_closed_form = qubit_coherent_ergotropy(row.purity_out, row.l1_out, gap);
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g;
  g.reserve(n);
  if (n == 1) {
    g.push_back(lo);
    return g;
  }
  for (std::size_t i = 0; i < n; ++i) {
    g.push_back(i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return g;
}

}  // namespace ergocoh
