// ergocoh: command-line front end for the ergotropy decomposition library.
//
// Exit codes: 0 success, 1 computation failure (or failed property check),
// 2 bad input.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ergocoh/errors.hpp"
#include "ergocoh/experiments.hpp"
#include "ergocoh/property_suite.hpp"
#include "ergocoh/report_io.hpp"
#include "ergocoh/svg_plot.hpp"

namespace fs = std::filesystem;
namespace ex = ergocoh::experiments;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kBadInput = 2;

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos) {
      throw ergocoh::ValidationError(ergocoh::ValidationError::Kind::Parse,
                                     std::string("cannot parse ") + what + " entry '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) {
    throw ergocoh::ValidationError(ergocoh::ValidationError::Kind::Parse, std::string(what) + " list is empty");
  }
  return out;
}

fs::path prepare_dir(const std::string& dir) {
  fs::path p(dir);
  fs::create_directories(p);
  return p;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ergocoh::Error("cannot write " + p.string());
  return f;
}

void write_plot(const fs::path& p, const ergocoh::PlotSpec& spec) {
  auto f = open_out(p);
  ergocoh::write_svg(f, spec);
}

std::string num(double x) { return ergocoh::format_double(x); }

// --- analyze -----------------------------------------------------------------

struct AnalyzeArgs {
  std::string state;
  std::string energies;
  double beta = std::nan("");
  double energy_unit = 1.0;
  std::string out;
  bool json = false;
};

int cmd_analyze(const AnalyzeArgs& a) {
  ergocoh::StateFile sf = ergocoh::read_state_file(a.state);
  ergocoh::Hamiltonian h = sf.hamiltonian;
  if (!a.energies.empty()) h = ergocoh::Hamiltonian(parse_list(a.energies, "energies"));
  std::optional<double> beta;
  if (!std::isnan(a.beta)) {
    if (!(a.beta >= 0.0) || std::isinf(a.beta)) throw ergocoh::DomainError("--beta must be finite and >= 0");
    beta = a.beta / a.energy_unit;  // --beta is given in the output unit
  }
  const ergocoh::ErgotropyReport r = ergocoh::analyze(sf.state, h, beta);
  const nlohmann::json doc = ergocoh::report_to_json(r, a.energy_unit);

  if (!a.out.empty()) {
    auto f = open_out(prepare_dir(a.out) / "report.json");
    f << doc.dump(2) << '\n';
  }
  if (a.json) {
    std::cout << doc.dump(2) << '\n';
    return kOk;
  }
  const double u = a.energy_unit;
  std::cout << "dim                 " << r.state.dim() << (r.degenerate_hamiltonian ? "  (degenerate H)" : "") << '\n'
            << "mean energy         " << num(r.mean_energy / u) << '\n'
            << "ergotropy           " << num(r.ergotropy / u) << '\n'
            << "  incoherent        " << num(r.incoherent / u) << '\n'
            << "  coherent          " << num(r.coherent / u) << '\n'
            << "beta*               " << num(r.beta_star * u) << '\n'
            << "bound ergotropy     " << num(r.bound_ergotropy / u) << '\n'
            << "coherence (nats)    " << num(r.coherence) << '\n'
            << "l1 coherence        " << num(r.l1_coherence) << '\n'
            << "purity              " << num(r.purity) << '\n'
            << "entropy (nats)      " << num(r.entropy) << '\n';
  if (r.lower_bound) {
    std::cout << "bounds at beta=" << num(r.bounds_beta * u) << ": " << num(*r.lower_bound)
              << " <= beta*E_c = " << num(r.bounds_beta * r.coherent) << " <= " << num(*r.upper_bound)
              << "  (identity residual " << num(*r.identity_residual) << ")\n";
  } else {
    std::cout << "bounds              omitted (beta is 0 or infinite)\n";
  }
  return kOk;
}

// --- qutrit-saturation ---------------------------------------------------------

int cmd_qutrit_saturation(const std::string& ratios, std::size_t r1_points, const std::string& out) {
  ex::QutritSaturationConfig cfg;
  cfg.ratios = parse_list(ratios, "R");
  if (r1_points < 2) throw ergocoh::DomainError("--r1-points must be at least 2");
  cfg.r1_points = r1_points;
  const ex::SaturationResult res = ex::qutrit_saturation(cfg);

  const fs::path dir = prepare_dir(out);
  {
    auto f = open_out(dir / "qutrit_saturation.csv");
    ex::write_saturation_csv(f, res);
  }
  ergocoh::PlotSpec plot{"zero bound-ergotropy locus", "r1", "r2", {}};
  for (double ratio : cfg.ratios) {
    ergocoh::PlotSeries s{"R = " + num(ratio), {}, {}, ratio < 0.5};
    for (const auto& p : res.points) {
      if (p.ratio == ratio) {
        s.x.push_back(p.r1);
        s.y.push_back(p.r2);
      }
    }
    plot.series.push_back(std::move(s));
  }
  write_plot(dir / "qutrit_saturation.svg", plot);

  std::cout << "points: " << res.points.size() << ", anomalies (r1 with several roots): " << res.anomalies.size()
            << '\n';
  for (const auto& a : res.anomalies) {
    std::cout << "  R=" << num(a.ratio) << " r1=" << num(a.r1) << " roots=" << a.roots << '\n';
  }
  return kOk;
}

// --- displaced-thermal ---------------------------------------------------------

struct DisplacedArgs {
  double alpha_max = 3.0;
  std::size_t alpha_points = 31;
  std::string n_bars = "0,1";
  ergocoh::Index n_max = 60;
  ergocoh::Index n_max_cap = 200;
  std::string out = "out";
};

int cmd_displaced_thermal(const DisplacedArgs& a) {
  if (!(a.alpha_max >= 0.0) || std::isinf(a.alpha_max)) throw ergocoh::DomainError("--alpha-max must be >= 0");
  if (a.alpha_points == 0) throw ergocoh::DomainError("--alpha-points must be positive");
  if (a.n_max < 2 || a.n_max_cap < a.n_max) throw ergocoh::DomainError("need 2 <= --n-max <= --n-max-cap");
  ex::DisplacedThermalConfig cfg = ex::DisplacedThermalConfig::with_alpha_max(a.alpha_max, a.alpha_points);
  cfg.n_bars = parse_list(a.n_bars, "n-bar");
  for (double nb : cfg.n_bars) {
    if (!(nb >= 0.0) || std::isinf(nb)) throw ergocoh::DomainError("--n-bar entries must be finite and >= 0");
  }
  cfg.n_max = a.n_max;
  cfg.n_max_cap = a.n_max_cap;
  const auto rows = ex::displaced_thermal_sweep(cfg);

  const fs::path dir = prepare_dir(a.out);
  {
    auto f = open_out(dir / "displaced_thermal.csv");
    ex::write_displaced_thermal_csv(f, rows);
  }
  ergocoh::PlotSpec main{"coherent ergotropy of displaced thermal states", "alpha", "energy / hbar omega", {}};
  ergocoh::PlotSpec ratio{"coherent fraction of the ergotropy", "alpha", "E_c / E", {}};
  ergocoh::PlotSeries total{"ergotropy", {}, {}, true};
  std::size_t failed = 0;
  for (double nb : cfg.n_bars) {
    ergocoh::PlotSeries ec{"E_c, n = " + num(nb), {}, {}, false};
    ergocoh::PlotSeries fr{"n = " + num(nb), {}, {}, false};
    for (const auto& r : rows) {
      if (r.n_bar != nb) continue;
      if (!r.error.empty()) {
        ++failed;
        std::cerr << "alpha=" << num(r.alpha) << " n_bar=" << num(r.n_bar) << ": " << r.error << '\n';
      }
      ec.x.push_back(r.alpha);
      ec.y.push_back(r.ec);
      fr.x.push_back(r.alpha);
      fr.y.push_back(r.ec_over_e);
      if (nb == cfg.n_bars.front()) {
        total.x.push_back(r.alpha);
        total.y.push_back(r.ergotropy);
      }
    }
    main.series.push_back(std::move(ec));
    ratio.series.push_back(std::move(fr));
  }
  main.series.push_back(std::move(total));
  write_plot(dir / "displaced_thermal.svg", main);
  write_plot(dir / "displaced_thermal_ratio.svg", ratio);

  std::cout << "rows: " << rows.size() << ", failed: " << failed << '\n';
  return failed == 0 ? kOk : kFailure;
}

// --- gad-counterexample ----------------------------------------------------------

int cmd_gad(double gamma, double rho11, std::size_t q_points, const std::string& out) {
  ex::GadConfig cfg;
  cfg.gamma = gamma;
  cfg.rho11 = rho11;
  cfg.q_points = q_points;
  const auto rows = ex::gad_counterexample(cfg);
  const ex::GadSummary s = ex::summarize(rows);

  const fs::path dir = prepare_dir(out);
  {
    auto f = open_out(dir / "gad_counterexample.csv");
    ex::write_gad_csv(f, rows);
  }
  ergocoh::PlotSpec plot{"E_c(rho) - E_c(GAD(rho))", "q", "difference", {}};
  ergocoh::PlotSeries d{"gamma = " + num(gamma), {}, {}, false};
  for (const auto& r : rows) {
    d.x.push_back(r.q);
    d.y.push_back(r.diff);
  }
  plot.series.push_back(std::move(d));
  write_plot(dir / "gad_counterexample.svg", plot);

  std::cout << "min difference " << num(s.min_diff) << " at q = " << num(s.q_at_min) << "; " << s.increases
            << " of " << rows.size() << " points increase E_c; threshold "
            << (s.threshold_consistent ? "consistent" : "VIOLATED") << '\n';
  return kOk;
}

// --- property-suite --------------------------------------------------------------

int cmd_property_suite(const ergocoh::PropertySuiteOptions& opts, const std::string& out) {
  const auto outcomes = ergocoh::run_property_suite(opts);
  nlohmann::json doc;
  doc["seed"] = opts.seed;
  doc["invariants"] = nlohmann::json::array();
  bool all = true;
  for (const auto& o : outcomes) {
    all = all && o.passed;
    doc["invariants"].push_back(ergocoh::to_json(o));
    std::cout << (o.passed ? "PASS " : "FAIL ") << std::left << std::setw(44) << o.name << " cases=" << o.cases
              << " worst=" << num(o.worst) << " tol=" << num(o.tolerance) << '\n';
  }
  doc["passed"] = all;
  if (!out.empty()) {
    auto f = open_out(prepare_dir(out) / "property_suite.json");
    f << doc.dump(2) << '\n';
  }
  for (const auto& o : outcomes) {
    if (!o.passed) std::cout << "counterexample for " << o.name << ":\n" << o.counterexample->dump(2) << '\n';
  }
  return all ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherent and incoherent ergotropy toolkit"};
  app.require_subcommand(1);

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Decompose the ergotropy of a state file");
  analyze->add_option("--state", an.state, "State file (JSON: dim, energies, rho_re, rho_im)")
      ->required()
      ->check(CLI::ExistingFile);
  analyze->add_option("--energies", an.energies, "Comma-separated energies overriding the file");
  analyze->add_option("--beta", an.beta, "Inverse temperature for the bounds (default: beta*)");
  analyze->add_option("--energy-unit", an.energy_unit, "Energy unit applied to the output")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  analyze->add_option("--out", an.out, "Directory for report.json");
  analyze->add_flag("--json", an.json, "Print the JSON report instead of the summary");

  std::string ratios = "0,0.1,0.3,0.5,0.7,1";
  std::size_t r1_points = 400;
  std::string sat_out = "out";
  auto* sat = app.add_subcommand("qutrit-saturation", "Zero bound-ergotropy locus of a qutrit");
  sat->add_option("--R", ratios, "Comma-separated energy ratios eps2/eps3")->capture_default_str();
  sat->add_option("--r1-points", r1_points, "Grid points for r1 in [1/3, 1]")->capture_default_str();
  sat->add_option("--out", sat_out, "Output directory")->capture_default_str();

  DisplacedArgs dt;
  auto* disp = app.add_subcommand("displaced-thermal", "Ergotropy of displaced thermal states vs alpha");
  disp->add_option("--alpha-max", dt.alpha_max, "Largest displacement")->capture_default_str();
  disp->add_option("--alpha-points", dt.alpha_points, "Points in [0, alpha-max]")->capture_default_str();
  disp->add_option("--n-bar", dt.n_bars, "Comma-separated thermal occupations")->capture_default_str();
  disp->add_option("--n-max", dt.n_max, "Starting Fock truncation")->capture_default_str();
  disp->add_option("--n-max-cap", dt.n_max_cap, "Largest Fock truncation tried")->capture_default_str();
  disp->add_option("--out", dt.out, "Output directory")->capture_default_str();

  double gamma = 0.1, rho11 = 1.0 / 3.0;
  std::size_t q_points = 201;
  std::string gad_out = "out";
  auto* gad = app.add_subcommand("gad-counterexample", "Coherent ergotropy under generalized amplitude damping");
  gad->add_option("--gamma", gamma, "Damping strength")->capture_default_str();
  gad->add_option("--rho11", rho11, "Ground-state population of the input")->capture_default_str();
  gad->add_option("--q-points", q_points, "Points in q in [0, 1]")->capture_default_str();
  gad->add_option("--out", gad_out, "Output directory")->capture_default_str();

  ergocoh::PropertySuiteOptions ps;
  std::string ps_out;
  auto* prop = app.add_subcommand("property-suite", "Run the randomized invariant checks");
  prop->add_option("--seed", ps.seed, "Corpus seed")->capture_default_str();
  prop->add_option("--states-per-dim", ps.states_per_dim, "Random states per dimension")->capture_default_str();
  prop->add_option("--unitary-states", ps.unitary_states, "States for unitary sampling")->capture_default_str();
  prop->add_option("--unitaries-per-state", ps.unitaries_per_state, "Random unitaries per state")
      ->capture_default_str();
  prop->add_option("--exhaustive-states", ps.exhaustive_states, "States per dim for the d! search")
      ->capture_default_str();
  prop->add_flag("--inject-failure", ps.inject_failure, "Test mode: force one invariant to fail");
  prop->add_option("--out", ps_out, "Directory for property_suite.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadInput;
  }

  try {
    if (*analyze) return cmd_analyze(an);
    if (*sat) return cmd_qutrit_saturation(ratios, r1_points, sat_out);
    if (*disp) return cmd_displaced_thermal(dt);
    if (*gad) return cmd_gad(gamma, rho11, q_points, gad_out);
    if (*prop) return cmd_property_suite(ps, ps_out);
  } catch (const ergocoh::ValidationError& e) {
    std::cerr << "error [" << ergocoh::to_string(e.kind()) << "]: " << e.what() << '\n';
    return kBadInput;
  } catch (const ergocoh::DomainError& e) {
    std::cerr << "error [domain]: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}
