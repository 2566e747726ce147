#pragma once

// Figure-reproduction sweeps. Each sweep returns plain rows so callers can
// check them against the library, and has a CSV writer with a fixed header
// and round-trip number formatting (same inputs, byte-identical output).

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ergocoh/bosonic.hpp"
#include "ergocoh/channels.hpp"

namespace ergocoh::experiments {

// --- qutrit bound-ergotropy saturation locus -------------------------------

struct QutritSaturationConfig {
  std::vector<double> ratios{0.0, 0.1, 0.3, 0.5, 0.7, 1.0};
  std::size_t r1_points = 400;        // uniform in [1/3, 1]
  std::size_t r2_samples = 64;        // sign scan before bisection
  double root_tol = 1e-10;            // bisection width in r2
  double eps3 = 1.0;
};

struct SaturationPoint {
  double ratio;
  double r1;
  double r2;
  double r3;
  double beta_star;
  double delta_ec;         // closed form at the root
  double delta_ec_pipeline;  // bound_ergotropy on diag(r1, r2, r3)
};

struct SaturationAnomaly {
  double ratio;
  double r1;
  std::size_t roots;
};

struct SaturationResult {
  std::vector<SaturationPoint> points;
  std::vector<SaturationAnomaly> anomalies;  // r1 values with more than one root
};

/// Roots in r2 of r2 - g_2(beta*(r1, r2)) on the ordered simplex for one
/// (R, r1). On these roots the spectrum equals the Gibbs populations at
/// beta*, so the bound ergotropy vanishes there.
std::vector<double> saturation_roots(double ratio, double r1, const QutritSaturationConfig& cfg);

SaturationResult qutrit_saturation(const QutritSaturationConfig& cfg);
void write_saturation_csv(std::ostream& out, const SaturationResult& result);

// --- displaced thermal states -----------------------------------------------

struct DisplacedThermalConfig {
  std::vector<double> alphas;        // real displacements
  std::vector<double> n_bars{0.0, 1.0};
  Index n_max = 60;                  // starting truncation
  Index n_max_cap = 200;
  double omega = 1.0;

  static DisplacedThermalConfig with_alpha_max(double alpha_max, std::size_t points = 31);
};

struct DisplacedThermalRow {
  double alpha;
  double n_bar;
  Index n_max;
  double energy;
  double ergotropy;
  double ec;
  double ei;
  double ec_over_e;   // E_c / ergotropy; NaN when the ergotropy vanishes
  std::string error;  // non-empty when this point failed; numbers are NaN
};

DisplacedThermalRow displaced_thermal_point(double alpha, double n_bar, const DisplacedThermalConfig& cfg);
std::vector<DisplacedThermalRow> displaced_thermal_sweep(const DisplacedThermalConfig& cfg);
void write_displaced_thermal_csv(std::ostream& out, const std::vector<DisplacedThermalRow>& rows);

// --- GAD counterexample ------------------------------------------------------

struct GadConfig {
  double gamma = 0.1;
  double rho11 = 1.0 / 3.0;
  double phase = 0.0;
  std::size_t q_points = 201;
};

struct GadSummary {
  double min_diff;
  double q_at_min;
  std::size_t increases;            // rows with E_c(out) > E_c(in)
  bool threshold_consistent;        // every increase has purity_out < p_c
};

std::vector<MonotoneScanRow> gad_counterexample(const GadConfig& cfg);
GadSummary summarize(const std::vector<MonotoneScanRow>& rows);
void write_gad_csv(std::ostream& out, const std::vector<MonotoneScanRow>& rows);

}  // namespace ergocoh::experiments
