#pragma once

// Seeded randomized checks of the library's invariants. Used by the CLI's
// property-suite command; the corpus helpers are shared with the tests.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ergocoh/ergotropy.hpp"

namespace ergocoh {

/// A random state together with a random ascending Hamiltonian.
struct StateCase {
  DensityMatrix rho;
  Hamiltonian h;
};

/// Sorted uniform energies in [0, span).
Hamiltonian random_hamiltonian(Index dim, std::mt19937_64& rng, double span = 2.0);

/// Case number `index` of a corpus: independent of every other index for a
/// given (seed, dim). full_rank = false cycles the rank through 1..dim.
StateCase make_case(std::uint64_t seed, Index dim, std::size_t index, bool full_rank);

/// max over all permutations of sum_k eps_k (p_k - p_{pi(k)}); d! work.
double brute_force_incoherent_ergotropy(const DensityMatrix& rho, const Hamiltonian& h);

struct PropertyOutcome {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  double worst = 0.0;      // largest observed error measure
  double tolerance = 0.0;  // pass iff worst <= tolerance
  std::optional<nlohmann::json> counterexample;
};

struct PropertySuiteOptions {
  std::uint64_t seed = 20200701;
  std::size_t states_per_dim = 500;
  std::size_t unitary_states = 20;
  std::size_t unitaries_per_state = 10000;
  std::size_t exhaustive_states = 100;
  /// Test mode: replaces one tolerance with an impossible one so the harness
  /// has to report a failure with a counterexample.
  bool inject_failure = false;
};

std::vector<PropertyOutcome> run_property_suite(const PropertySuiteOptions& opts);

nlohmann::json to_json(const PropertyOutcome& outcome);

}  // namespace ergocoh
