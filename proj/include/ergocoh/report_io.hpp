#pragma once

// JSON state files and report serialisation.
//
// State file:
//   { "dim": d, "energies": [...], "rho_re": [[...], ...], "rho_im": [[...], ...] }
// rho_re / rho_im are row-major d x d; a flat array of d*d numbers is also
// accepted on input. rho_im may be omitted for real states.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "ergocoh/ergotropy.hpp"

namespace ergocoh {

struct StateFile {
  DensityMatrix state;
  Hamiltonian hamiltonian;
};

/// Parses and validates a state document. Throws ValidationError (kind
/// Parse for malformed documents, otherwise the violated invariant).
StateFile parse_state_json(const nlohmann::json& doc);
StateFile read_state_file(const std::filesystem::path& path);

nlohmann::json state_to_json(const DensityMatrix& rho, const Hamiltonian& h);
void write_state_file(const std::filesystem::path& path, const DensityMatrix& rho, const Hamiltonian& h);

/// Scalars, permutation (0-based integer array), and matrices as state
/// documents. beta* = inf is written as the string "inf"; absent bounds as
/// null. energy_unit rescales energy-valued fields only.
nlohmann::json report_to_json(const ErgotropyReport& r, double energy_unit = 1.0);

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double x);

}  // namespace ergocoh
