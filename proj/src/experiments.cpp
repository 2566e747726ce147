#include "ergocoh/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>

#include "ergocoh/errors.hpp"
#include "ergocoh/report_io.hpp"

namespace ergocoh::experiments {

namespace {

constexpr double kEndpointTol = 1e-8;
constexpr double kDuplicateTol = 1e-7;
constexpr double kIncreaseTol = 1e-12;

struct SaturationProblem {
  double ratio;
  double r1;
  Hamiltonian h;

  double beta_at(double r2) const {
    const std::array<double, 3> spec{r1, r2, std::max(0.0, 1.0 - r1 - r2)};
    return beta_star_for_spectrum(spec, h);
  }

  // r2 - g_2(beta*). Zero exactly when diag(r1, r2, r3) is the Gibbs state
  // at beta*: equal entropy plus a matching middle weight pins the other two.
  double residual(double r2) const { return r2 - gibbs_populations(beta_at(r2), h)(1); }
};

std::string csv_number(double x) { return format_double(x); }

}  // namespace

std::vector<double> saturation_roots(double ratio, double r1, const QutritSaturationConfig& cfg) {
  const SaturationProblem prob{ratio, r1, Hamiltonian({0.0, ratio * cfg.eps3, cfg.eps3})};
  const double lo = 0.5 * (1.0 - r1);
  double hi = std::min(r1, 1.0 - r1);
  std::vector<double> roots;
  if (hi < lo - 1e-12) return roots;
  hi = std::max(hi, lo);

  if (hi - lo <= cfg.root_tol) {
    if (std::abs(prob.residual(lo)) <= kEndpointTol) roots.push_back(lo);
    return roots;
  }

  const std::size_t m = std::max<std::size_t>(cfg.r2_samples, 2);
  std::vector<double> xs(m + 1), fs(m + 1);
  for (std::size_t i = 0; i <= m; ++i) {
    xs[i] = i == m ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(m);
    fs[i] = prob.residual(xs[i]);
  }
  if (std::abs(fs.front()) <= kEndpointTol) roots.push_back(xs.front());
  for (std::size_t i = 0; i < m; ++i) {
    if (i > 0 && fs[i] == 0.0) roots.push_back(xs[i]);
    if ((fs[i] < 0.0 && fs[i + 1] > 0.0) || (fs[i] > 0.0 && fs[i + 1] < 0.0)) {
      double a = xs[i], b = xs[i + 1];
      double fa = fs[i];
      while (b - a > cfg.root_tol) {
        const double mid = 0.5 * (a + b);
        const double fm = prob.residual(mid);
        if (fm == 0.0) {
          a = b = mid;
          break;
        }
        if ((fm < 0.0) == (fa < 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
  }
  if (std::abs(fs.back()) <= kEndpointTol) roots.push_back(xs.back());

  std::sort(roots.begin(), roots.end());
  std::vector<double> unique;
  for (double r : roots) {
    if (unique.empty() || r - unique.back() > kDuplicateTol) unique.push_back(r);
  }
  return unique;
}

SaturationResult qutrit_saturation(const QutritSaturationConfig& cfg) {
  SaturationResult result;
  const std::vector<double> r1_grid = uniform_grid(1.0 / 3.0, 1.0, cfg.r1_points);
  for (double ratio : cfg.ratios) {
    if (!(ratio >= 0.0 && ratio <= 1.0)) throw DomainError("energy ratio R must lie in [0, 1]");
    const Hamiltonian h({0.0, ratio * cfg.eps3, cfg.eps3});
    for (double r1 : r1_grid) {
      const std::vector<double> roots = saturation_roots(ratio, r1, cfg);
      if (roots.size() > 1) result.anomalies.push_back({ratio, r1, roots.size()});
      for (double r2 : roots) {
        const double r3 = std::max(0.0, 1.0 - r1 - r2);
        const std::array<double, 3> spec{r1, r2, r3};
        const double bs = beta_star_for_spectrum(spec, h);
        SaturationPoint p{};
        p.ratio = ratio;
        p.r1 = r1;
        p.r2 = r2;
        p.r3 = r3;
        p.beta_star = bs;
        p.delta_ec = three_level_delta_ec(r1, r2, ratio, cfg.eps3, bs);
        p.delta_ec_pipeline = bound_ergotropy(DensityMatrix::diagonal(Eigen::Vector3d(r1, r2, r3)), h);
        result.points.push_back(p);
      }
    }
  }
  return result;
}

void write_saturation_csv(std::ostream& out, const SaturationResult& result) {
  out << "R,r1,r2,r3,beta_star,delta_ec\n";
  for (const auto& p : result.points) {
    out << csv_number(p.ratio) << ',' << csv_number(p.r1) << ',' << csv_number(p.r2) << ',' << csv_number(p.r3)
        << ',' << csv_number(p.beta_star) << ',' << csv_number(p.delta_ec) << '\n';
  }
}

DisplacedThermalConfig DisplacedThermalConfig::with_alpha_max(double alpha_max, std::size_t points) {
  DisplacedThermalConfig cfg;
  cfg.alphas = uniform_grid(0.0, alpha_max, points);
  return cfg;
}

DisplacedThermalRow displaced_thermal_point(double alpha, double n_bar, const DisplacedThermalConfig& cfg) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  DisplacedThermalRow row{alpha, n_bar, 0, nan, nan, nan, nan, nan, {}};
  try {
    const DisplacedThermalSpec spec{Complex(alpha, 0.0), n_bar};
    const FockContext ctx = adaptive_context(spec, cfg.omega, cfg.n_max, cfg.n_max_cap);
    const ErgotropyReport r = gaussian_ergotropy_report(ctx, spec);
    row.n_max = ctx.n_max;
    row.energy = r.mean_energy;
    row.ergotropy = r.ergotropy;
    row.ec = r.coherent;
    row.ei = r.incoherent;
    row.ec_over_e = r.ergotropy > 1e-12 ? r.coherent / r.ergotropy : nan;
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

std::vector<DisplacedThermalRow> displaced_thermal_sweep(const DisplacedThermalConfig& cfg) {
  if (cfg.alphas.empty() || cfg.n_bars.empty()) throw DomainError("displaced-thermal sweep needs non-empty grids");
  std::vector<DisplacedThermalRow> rows;
  for (double nb : cfg.n_bars) {
    for (double a : cfg.alphas) rows.push_back(displaced_thermal_point(a, nb, cfg));
  }
  return rows;
}

void write_displaced_thermal_csv(std::ostream& out, const std::vector<DisplacedThermalRow>& rows) {
  out << "alpha,n_bar,n_max,energy,ergotropy,ec,ei,ec_over_e\n";
  for (const auto& r : rows) {
    out << csv_number(r.alpha) << ',' << csv_number(r.n_bar) << ',' << r.n_max << ',' << csv_number(r.energy) << ','
        << csv_number(r.ergotropy) << ',' << csv_number(r.ec) << ',' << csv_number(r.ei) << ','
        << csv_number(r.ec_over_e) << '\n';
  }
}

std::vector<MonotoneScanRow> gad_counterexample(const GadConfig& cfg) {
  if (cfg.q_points == 0) throw DomainError("q grid must be non-empty");
  const DensityMatrix rho0 = maximally_coherent_qubit(cfg.rho11, cfg.phase);
  return monotone_counterexample_scan(rho0, cfg.gamma, uniform_grid(0.0, 1.0, cfg.q_points));
}

GadSummary summarize(const std::vector<MonotoneScanRow>& rows) {
  GadSummary s{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::quiet_NaN(), 0, true};
  for (const auto& r : rows) {
    if (r.diff < s.min_diff) {
      s.min_diff = r.diff;
      s.q_at_min = r.q;
    }
    if (r.diff < -kIncreaseTol) {
      ++s.increases;
      if (!r.p_c || !(r.purity_out < *r.p_c)) s.threshold_consistent = false;
    }
  }
  return s;
}

void write_gad_csv(std::ostream& out, const std::vector<MonotoneScanRow>& rows) {
  out << "q,ec_in,ec_out,diff,purity_out,p_c\n";
  for (const auto& r : rows) {
    out << csv_number(r.q) << ',' << csv_number(r.ec_in) << ',' << csv_number(r.ec_out) << ',' << csv_number(r.diff)
        << ',' << csv_number(r.purity_out) << ',' << (r.p_c ? csv_number(*r.p_c) : std::string()) << '\n';
  }
}

}  // namespace ergocoh::experiments
