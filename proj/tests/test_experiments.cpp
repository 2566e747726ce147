#include <catch2/catch.hpp>

#include <cmath>
#include <sstream>

#include "ergocoh/errors.hpp"
#include "ergocoh/experiments.hpp"
#include "ergocoh/property_suite.hpp"
#include "ergocoh/report_io.hpp"
#include "ergocoh/svg_plot.hpp"

using namespace ergocoh;
namespace ex = ergocoh::experiments;
using Catch::Matchers::WithinAbs;
using nlohmann::json;

namespace {

std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

std::vector<double> csv_fields(const std::string& line) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) out.push_back(f.empty() ? std::nan("") : std::stod(f));
  return out;
}

}  // namespace

TEST_CASE("format_double round-trips", "[io]") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.482842712474619}) {
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("state documents", "[io]") {
  const json doc = json::parse(R"({"dim": 2, "energies": [0, 1],
                                   "rho_re": [[0.5, 0.25], [0.25, 0.5]],
                                   "rho_im": [[0, -0.1], [0.1, 0]]})");
  const StateFile sf = parse_state_json(doc);
  CHECK(sf.state(0, 1) == Complex(0.25, -0.1));
  CHECK(sf.hamiltonian.energies() == std::vector<double>{0.0, 1.0});

  SECTION("flat arrays and missing imaginary part") {
    const StateFile flat = parse_state_json(json::parse(R"({"dim": 2, "energies": [0, 1], "rho_re": [1, 0, 0, 0]})"));
    CHECK(flat.state(0, 0) == Complex(1.0, 0.0));
  }
  SECTION("round trip keeps every bit") {
    const DensityMatrix rho = random_density_matrix(3, 3, std::uint64_t{5});
    const Hamiltonian h({0.0, 0.3, 1.7});
    const StateFile back = parse_state_json(json::parse(state_to_json(rho, h).dump()));
    CHECK(max_abs_diff(back.state.matrix(), rho.matrix()) == 0.0);
  }
  SECTION("errors name the problem") {
    auto kind = [](const char* text) {
      try {
        parse_state_json(json::parse(text));
      } catch (const ValidationError& e) {
        return e.kind();
      }
      return ValidationError::Kind::NotSquare;
    };
    CHECK(kind(R"({"energies": [0, 1], "rho_re": [1, 0, 0, 0]})") == ValidationError::Kind::Parse);
    CHECK(kind(R"({"dim": 2, "energies": [0, 1], "rho_re": [1, 0, 0]})") == ValidationError::Kind::Parse);
    CHECK(kind(R"({"dim": 2, "energies": [1, 0], "rho_re": [1, 0, 0, 0]})") == ValidationError::Kind::NotAscending);
    CHECK(kind(R"({"dim": 2, "energies": [0, 1], "rho_re": [0.6, 0.9, 0.9, 0.4]})") ==
          ValidationError::Kind::NegativeEigenvalue);
    CHECK(kind(R"({"dim": 2, "energies": [0, 1, 2], "rho_re": [1, 0, 0, 0]})") == ValidationError::Kind::Parse);
  }
  CHECK_THROWS_AS(read_state_file("/nonexistent/state.json"), ValidationError);
}

TEST_CASE("report serialisation", "[io]") {
  ComplexMatrix m(2, 2);
  m << 0.3, 0.2, 0.2, 0.7;
  const auto r = analyze(validate_state(m), Hamiltonian({0.0, 1.0}));
  const json j = report_to_json(r);
  CHECK(j["ergotropy"].get<double>() == r.ergotropy);
  CHECK(j["optimal_perm"] == json::array({1, 0}));
  CHECK(j["sigma_state"]["rho_re"][0][0].get<double>() == 0.7);
  CHECK(j["lower_bound"].is_number());

  const json scaled = report_to_json(r, 2.0);
  CHECK(scaled["ergotropy"].get<double>() == 2.0 * r.ergotropy);
  CHECK_THAT(scaled["beta_star"].get<double>(), WithinAbs(r.beta_star / 2.0, 1e-15));
  CHECK(scaled["coherence"].get<double>() == r.coherence);

  const auto pure = analyze(DensityMatrix::diagonal(Eigen::Vector2d(0.0, 1.0)), Hamiltonian({0.0, 1.0}));
  const json jp = report_to_json(pure);
  CHECK(jp["beta_star"] == "inf");
  CHECK(jp["lower_bound"].is_null());
}

TEST_CASE("qutrit saturation locus", "[experiments]") {
  ex::QutritSaturationConfig cfg;
  cfg.r1_points = 40;
  const auto res = ex::qutrit_saturation(cfg);
  CHECK(res.anomalies.empty());
  for (double ratio : cfg.ratios) {
    const auto n = std::count_if(res.points.begin(), res.points.end(), [&](const auto& p) { return p.ratio == ratio; });
    if (ratio == 0.0) {
      // degenerate ground doublet: thermal spectra have r1 = r2 <= 1/2
      CHECK(n == 10);
    } else {
      CHECK(n == 40);
    }
  }
  for (const auto& p : res.points) {
    CHECK(std::abs(p.delta_ec) < 1e-8);
    CHECK(std::abs(p.delta_ec_pipeline) < 1e-8);
    CHECK(p.r1 >= p.r2 - 1e-12);
    CHECK(p.r2 >= p.r3 - 1e-12);
  }

  SECTION("a thermal spectrum is found as a root") {
    const Hamiltonian h({0.0, 0.5, 1.0});
    const RealVector g = gibbs_populations(1.4, h);
    const auto roots = ex::saturation_roots(0.5, g(0), cfg);
    REQUIRE(roots.size() == 1);
    CHECK_THAT(roots.front(), WithinAbs(g(1), 1e-9));
  }
  SECTION("CSV rows re-derive from the library") {
    std::ostringstream os;
    ex::write_saturation_csv(os, res);
    const auto lines = csv_lines(os.str());
    CHECK(lines.front() == "R,r1,r2,r3,beta_star,delta_ec");
    REQUIRE(lines.size() == res.points.size() + 1);
    const auto f = csv_fields(lines[5]);
    const std::array<double, 3> spec{f[1], f[2], f[3]};
    CHECK_THAT(beta_star_for_spectrum(spec, Hamiltonian({0.0, f[0], 1.0})), WithinAbs(f[4], 1e-9));
    CHECK_THAT(three_level_delta_ec(f[1], f[2], f[0], 1.0), WithinAbs(f[5], 1e-9));
  }
  CHECK_THROWS_AS(ex::qutrit_saturation({{1.5}, 10, 64, 1e-10, 1.0}), DomainError);
}

TEST_CASE("displaced thermal sweep", "[experiments]") {
  ex::DisplacedThermalConfig cfg = ex::DisplacedThermalConfig::with_alpha_max(2.0, 5);
  const auto rows = ex::displaced_thermal_sweep(cfg);
  REQUIRE(rows.size() == 10);
  for (const auto& r : rows) {
    CHECK(r.error.empty());
    CHECK(std::abs(r.energy - (r.alpha * r.alpha + r.n_bar)) < 1e-6);
    CHECK(std::abs(r.ergotropy - r.alpha * r.alpha) < 1e-6);
    if (r.alpha == 0.0) {
      CHECK(std::abs(r.ec) < 1e-9);
      CHECK(std::isnan(r.ec_over_e));
    }
  }
  CHECK(rows[1].ec_over_e > rows[2].ec_over_e);
  CHECK(rows[2].ec_over_e > rows[4].ec_over_e);

  std::ostringstream os;
  ex::write_displaced_thermal_csv(os, rows);
  const auto lines = csv_lines(os.str());
  CHECK(lines.front() == "alpha,n_bar,n_max,energy,ergotropy,ec,ei,ec_over_e");
  const auto f = csv_fields(lines[3]);
  const DisplacedThermalSpec spec{f[0], f[1]};
  const auto r = gaussian_ergotropy_report({static_cast<Index>(f[2]), 1.0}, spec);
  CHECK_THAT(r.coherent, WithinAbs(f[5], 1e-9));
  CHECK_THAT(r.incoherent, WithinAbs(f[6], 1e-9));

  SECTION("failed points are reported per row") {
    ex::DisplacedThermalConfig tight;
    tight.alphas = {1.0, 9.0};
    tight.n_max_cap = 60;
    const auto rr = ex::displaced_thermal_sweep(tight);
    CHECK(rr[0].error.empty());
    CHECK_FALSE(rr[1].error.empty());
    CHECK(std::isnan(rr[1].ec));
  }
}

TEST_CASE("GAD counterexample experiment", "[experiments]") {
  const auto rows = ex::gad_counterexample({});
  const auto s = ex::summarize(rows);
  CHECK_THAT(s.min_diff, WithinAbs(-0.024924236162250757, 1e-10));
  CHECK(s.q_at_min == 1.0);
  CHECK(s.increases == 67);
  CHECK(s.threshold_consistent);

  std::ostringstream os;
  ex::write_gad_csv(os, rows);
  const auto lines = csv_lines(os.str());
  CHECK(lines.front() == "q,ec_in,ec_out,diff,purity_out,p_c");
  CHECK(lines.size() == 202);

  const auto flat = ex::summarize(ex::gad_counterexample({0.0, 1.0 / 3.0, 0.0, 21}));
  CHECK(flat.increases == 0);
  CHECK(std::abs(flat.min_diff) < 1e-14);
}

TEST_CASE("svg output", "[experiments]") {
  std::ostringstream os;
  write_svg(os, {"t<1>", "x", "y", {{"a", {0, 1, 2}, {0, 1, 4}, false}, {"b", {0, 1}, {std::nan(""), 1}, true}}});
  const std::string s = os.str();
  CHECK(s.rfind("<svg", 0) == 0);
  CHECK(s.find("t&lt;1&gt;") != std::string::npos);
  CHECK(s.find("stroke-dasharray") != std::string::npos);
  CHECK(s.find("</svg>") != std::string::npos);
}

TEST_CASE("property suite harness", "[experiments]") {
  PropertySuiteOptions o;
  o.states_per_dim = 12;
  o.unitary_states = 2;
  o.unitaries_per_state = 50;
  o.exhaustive_states = 3;
  const auto ok = run_property_suite(o);
  CHECK(ok.size() > 25);
  for (const auto& r : ok) {
    INFO(r.name);
    CHECK(r.passed);
    CHECK(r.cases > 0);
  }

  o.inject_failure = true;
  const auto bad = run_property_suite(o);
  const auto it = std::find_if(bad.begin(), bad.end(), [](const auto& r) { return !r.passed; });
  REQUIRE(it != bad.end());
  CHECK(it->name == "ergotropy.decomposition");
  REQUIRE(it->counterexample);
  const StateFile sf = parse_state_json((*it->counterexample)["state"]);
  CHECK(sf.state.dim() >= 2);
  CHECK(to_json(*it)["passed"] == false);
}
