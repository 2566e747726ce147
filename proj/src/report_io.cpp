#include "ergocoh/report_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ergocoh/errors.hpp"

namespace ergocoh {

using nlohmann::json;

namespace {

[[noreturn]] void parse_error(const std::string& what) {
  throw ValidationError(ValidationError::Kind::Parse, what);
}

Eigen::MatrixXd read_real_matrix(const json& node, Index d, const char* name) {
  if (!node.is_array()) parse_error(std::string("field '") + name + "' must be an array");
  Eigen::MatrixXd m(d, d);
  if (node.size() == static_cast<std::size_t>(d * d) && (d * d == 0 || !node.front().is_array())) {
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) {
        const auto& v = node[static_cast<std::size_t>(i * d + j)];
        if (!v.is_number()) parse_error(std::string("field '") + name + "' has a non-numeric entry");
        m(i, j) = v.get<double>();
      }
    return m;
  }
  if (node.size() != static_cast<std::size_t>(d)) {
    parse_error(std::string("field '") + name + "' must have dim rows");
  }
  for (Index i = 0; i < d; ++i) {
    const auto& row = node[static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(d)) {
      parse_error(std::string("field '") + name + "' row " + std::to_string(i) + " must have dim entries");
    }
    for (Index j = 0; j < d; ++j) {
      const auto& v = row[static_cast<std::size_t>(j)];
      if (!v.is_number()) parse_error(std::string("field '") + name + "' has a non-numeric entry");
      m(i, j) = v.get<double>();
    }
  }
  return m;
}

json matrix_rows(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json optional_number(const std::optional<double>& x, double scale = 1.0) {
  if (!x || !std::isfinite(*x)) return nullptr;
  return *x * scale;
}

json beta_value(double beta, double energy_unit) {
  if (std::isinf(beta)) return "inf";
  return beta / energy_unit;
}

}  // namespace

StateFile parse_state_json(const json& doc) {
  if (!doc.is_object()) parse_error("state document must be a JSON object");
  for (const char* key : {"dim", "energies", "rho_re"}) {
    if (!doc.contains(key)) parse_error(std::string("state document is missing '") + key + "'");
  }
  if (!doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 1) {
    parse_error("'dim' must be a positive integer");
  }
  const auto d = static_cast<Index>(doc["dim"].get<long long>());
  const json& en = doc["energies"];
  if (!en.is_array() || en.size() != static_cast<std::size_t>(d)) parse_error("'energies' must hold dim numbers");
  std::vector<double> energies;
  for (const auto& v : en) {
    if (!v.is_number()) parse_error("'energies' has a non-numeric entry");
    energies.push_back(v.get<double>());
  }
  const Eigen::MatrixXd re = read_real_matrix(doc["rho_re"], d, "rho_re");
  Eigen::MatrixXd im = Eigen::MatrixXd::Zero(d, d);
  if (doc.contains("rho_im") && !doc["rho_im"].is_null()) im = read_real_matrix(doc["rho_im"], d, "rho_im");
  ComplexMatrix m(d, d);
  m.real() = re;
  m.imag() = im;
  Hamiltonian h(std::move(energies));
  return StateFile{DensityMatrix::validate(std::move(m)), std::move(h)};
}

StateFile read_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open state file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    parse_error("malformed JSON in " + path.string() + ": " + e.what());
  }
  return parse_state_json(doc);
}

json state_to_json(const DensityMatrix& rho, const Hamiltonian& h) {
  json doc;
  doc["dim"] = rho.dim();
  doc["energies"] = h.energies();
  doc["rho_re"] = matrix_rows(rho.matrix().real());
  doc["rho_im"] = matrix_rows(rho.matrix().imag());
  return doc;
}

void write_state_file(const std::filesystem::path& path, const DensityMatrix& rho, const Hamiltonian& h) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << state_to_json(rho, h).dump(2) << '\n';
}

json report_to_json(const ErgotropyReport& r, double energy_unit) {
  const double u = energy_unit;
  json doc;
  doc["dim"] = r.state.dim();
  doc["energy_unit"] = u;
  doc["mean_energy"] = r.mean_energy * u;
  doc["ergotropy"] = r.ergotropy * u;
  doc["incoherent_ergotropy"] = r.incoherent * u;
  doc["incoherent_ergotropy_dephased"] = r.incoherent_dephased * u;
  doc["coherent_ergotropy"] = r.coherent * u;
  doc["beta_star"] = beta_value(r.beta_star, u);
  doc["bound_ergotropy"] = r.bound_ergotropy * u;
  doc["bounds_beta"] = beta_value(r.bounds_beta, u);
  doc["lower_bound"] = optional_number(r.lower_bound);
  doc["upper_bound"] = optional_number(r.upper_bound);
  doc["identity_residual"] = optional_number(r.identity_residual);
  doc["coherence"] = r.coherence;
  doc["l1_coherence"] = r.l1_coherence;
  doc["purity"] = r.purity;
  doc["entropy"] = r.entropy;
  doc["degenerate_hamiltonian"] = r.degenerate_hamiltonian;
  doc["optimal_perm"] = r.optimal_perm.perm();
  doc["state"] = state_to_json(r.state, r.hamiltonian);
  doc["passive_state"] = state_to_json(r.passive_state, r.hamiltonian);
  doc["dephased_passive"] = state_to_json(r.dephased_passive, r.hamiltonian);
  doc["sigma_state"] = state_to_json(r.sigma_state, r.hamiltonian);
  doc["dephased"] = state_to_json(r.dephased, r.hamiltonian);
  return doc;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace ergocoh
