#pragma once

#include <optional>
#include <vector>

#include "ergocoh/states.hpp"

namespace ergocoh {

/// Completeness tolerance: || sum_j E_j^dagger E_j - 1 ||_max.
inline constexpr double kChannelTol = 1e-10;

/// Channel in Kraus form, rho -> sum_j E_j rho E_j^dagger.
class KrausChannel {
 public:
  /// Throws ValidationError if the operators differ in shape or violate
  /// completeness.
  explicit KrausChannel(std::vector<ComplexMatrix> operators);

  static KrausChannel identity(Index dim);
  /// Projectors |k><k|; implements the dephasing map.
  static KrausChannel full_dephasing(Index dim);
  static KrausChannel unitary(const ComplexMatrix& u);

  Index dim() const noexcept { return operators_.front().rows(); }
  const std::vector<ComplexMatrix>& operators() const noexcept { return operators_; }
  double completeness_residual() const;

 private:
  std::vector<ComplexMatrix> operators_;
};

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho);

/// Four-operator generalized amplitude damping with ground-state weight q
/// and damping strength gamma.
KrausChannel generalized_amplitude_damping(double q, double gamma);

struct IncoherenceWitness {
  bool incoherent = true;
  // First violation found, if any.
  std::optional<std::size_t> kraus_index;
  std::optional<Index> basis_index;
  double off_diagonal_mass = 0.0;
};

/// Checks that every Kraus operator maps each energy eigenprojector to a
/// diagonal matrix (off-diagonal mass below 1e-10).
IncoherenceWitness check_incoherent_operation(const KrausChannel& ch);

/// Qubit with populations (rho11, 1 - rho11) and the largest coherence
/// compatible with purity, times e^{i phase}.
DensityMatrix maximally_coherent_qubit(double rho11, double phase = 0.0);

struct MonotoneScanRow {
  double q;
  double ec_in;        // E_c(rho0)
  double ec_out;       // E_c(Omega(rho0))
  double diff;         // ec_in - ec_out
  double purity_out;
  double l1_out;
  std::optional<double> p_c;  // purity threshold; absent when ec_in = 0
  double ec_out_closed_form;  // E_c(Omega(rho0)) from the qubit closed form
};

/// Scans the GAD family over q at fixed gamma. Energies default to (0, 1).
std::vector<MonotoneScanRow> monotone_counterexample_scan(const DensityMatrix& rho0, double gamma,
                                                          const std::vector<double>& q_grid,
                                                          const Hamiltonian& h = Hamiltonian({0.0, 1.0}));

/// n uniform points from lo to hi inclusive (n = 1 gives lo).
std::vector<double> uniform_grid(double lo, double hi, std::size_t n);

}  // namespace ergocoh
