#include <catch2/catch.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "ergocoh/errors.hpp"
#include "ergocoh/states.hpp"

using namespace ergocoh;
using Catch::Matchers::WithinAbs;

namespace {

ComplexMatrix real2(double a, double b, double c, double d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

ValidationError::Kind kind_of(ComplexMatrix m) {
  try {
    validate_state(std::move(m));
  } catch (const ValidationError& e) {
    return e.kind();
  }
  FAIL("state was accepted");
  return ValidationError::Kind::Parse;
}

}  // namespace

TEST_CASE("Hamiltonian validation", "[states]") {
  CHECK_THROWS_AS(Hamiltonian({}), ValidationError);
  CHECK_THROWS_AS(Hamiltonian({1.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(Hamiltonian({0.0, std::numeric_limits<double>::infinity()}), ValidationError);
  CHECK_FALSE(Hamiltonian({0.0, 1.0}).degenerate());
  CHECK(Hamiltonian({0.0, 1.0, 1.0}).degenerate());

  const Hamiltonian h = Hamiltonian::harmonic(4, 0.5);
  CHECK(h.energies() == std::vector<double>{0.0, 0.5, 1.0, 1.5});
  CHECK(h.shifted(2.0).energy(0) == 2.0);
}

TEST_CASE("validate_state", "[states]") {
  CHECK_NOTHROW(validate_state(ComplexMatrix::Identity(3, 3) / 3.0));
  CHECK_NOTHROW(validate_state(real2(1, 0, 0, 0)));
  CHECK(kind_of(real2(0.6, 0.9, 0.9, 0.4)) == ValidationError::Kind::NegativeEigenvalue);
  CHECK(kind_of(real2(0.6, 0.1, 0.0, 0.4)) == ValidationError::Kind::NonHermitian);
  CHECK(kind_of(real2(0.6, 0.0, 0.0, 0.5)) == ValidationError::Kind::TraceNotOne);
  CHECK(kind_of(ComplexMatrix::Zero(2, 3)) == ValidationError::Kind::NotSquare);
  CHECK(kind_of(real2(std::nan(""), 0, 0, 1)) == ValidationError::Kind::NotFinite);
  // within tolerance is accepted
  CHECK_NOTHROW(validate_state(real2(0.5 + 4e-11, 0.0, 0.0, 0.5)));
}

TEST_CASE("Gibbs states", "[states]") {
  const Hamiltonian qubit({0.0, 1.0});
  const RealVector g = gibbs_populations(std::log(2.0), qubit);
  CHECK_THAT(g(0), WithinAbs(2.0 / 3.0, 1e-15));
  CHECK_THAT(g(1), WithinAbs(1.0 / 3.0, 1e-15));

  const RealVector flat = gibbs_populations(0.0, Hamiltonian({0.0, 1.0, 5.0}));
  for (Index k = 0; k < 3; ++k) CHECK_THAT(flat(k), WithinAbs(1.0 / 3.0, 1e-15));

  const RealVector q = gibbs_state({1.0, Hamiltonian({0.0, 1.0, 2.0})}).populations();
  CHECK_THAT(q(0), WithinAbs(0.6652409557748218, 1e-14));
  CHECK_THAT(q(1), WithinAbs(0.24472847105479764, 1e-14));
  CHECK_THAT(q(2), WithinAbs(0.09003057317038046, 1e-14));

  SECTION("large energies do not overflow") {
    const RealVector big = gibbs_populations(1.0, Hamiltonian({1000.0, 1001.0}));
    CHECK_THAT(big(0), WithinAbs(1.0 / (1.0 + std::exp(-1.0)), 1e-14));
  }
  SECTION("infinite beta selects the ground manifold") {
    const RealVector z = gibbs_populations(std::numeric_limits<double>::infinity(), Hamiltonian({0.0, 0.0, 1.0}));
    CHECK(z(0) == 0.5);
    CHECK(z(1) == 0.5);
    CHECK(z(2) == 0.0);
  }
}

TEST_CASE("Gibbs entropy decreases strictly in beta", "[states][property]") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 50; ++i) {
    std::vector<double> e(2 + i % 5);
    for (auto& x : e) x = std::uniform_real_distribution<double>(0.0, 3.0)(rng);
    std::sort(e.begin(), e.end());
    const Hamiltonian h(e);
    if (h.degenerate()) continue;
    double prev = gibbs_entropy(0.0, h);
    CHECK_THAT(prev, WithinAbs(std::log(static_cast<double>(e.size())), 1e-14));
    for (int k = 1; k <= 40; ++k) {
      const double s = gibbs_entropy(0.25 * k, h);
      CHECK(s < prev);
      prev = s;
    }
  }
}

TEST_CASE("entropy and purity", "[states]") {
  const DensityMatrix ex = validate_state(real2(0.3, 0.2, 0.2, 0.7));
  CHECK_THAT(von_neumann_entropy(ex), WithinAbs(0.5232864164263099, 1e-12));
  CHECK_THAT(purity(ex), WithinAbs(0.66, 1e-15));
  CHECK(von_neumann_entropy(validate_state(real2(1, 0, 0, 0))) == 0.0);
  CHECK_THAT(von_neumann_entropy(validate_state(ComplexMatrix::Identity(4, 4) / 4.0)),
             WithinAbs(std::log(4.0), 1e-14));
  CHECK_THAT(purity(validate_state(ComplexMatrix::Identity(2, 2) / 2.0)), WithinAbs(0.5, 1e-16));

  const std::vector<double> spec{0.5, 0.5, -1e-11};
  CHECK_THAT(spectrum_entropy(spec), WithinAbs(std::log(2.0), 1e-15));
  const std::vector<double> bad{0.5, 0.6, -0.1};
  CHECK_THROWS_AS(spectrum_entropy(bad), ValidationError);
}

TEST_CASE("relative entropy", "[states]") {
  const DensityMatrix ex = validate_state(real2(0.3, 0.2, 0.2, 0.7));
  CHECK_THAT(relative_entropy(ex, ex), WithinAbs(0.0, 1e-12));
  const DensityMatrix up = DensityMatrix::diagonal(Eigen::Vector2d(1.0, 0.0));
  const DensityMatrix down = DensityMatrix::diagonal(Eigen::Vector2d(0.0, 1.0));
  const DensityMatrix mixed = DensityMatrix::diagonal(Eigen::Vector2d(0.5, 0.5));
  CHECK_THAT(relative_entropy(up, mixed), WithinAbs(std::log(2.0), 1e-14));
  CHECK(std::isinf(relative_entropy(down, up)));
  CHECK_THROWS_AS(relative_entropy(ex, validate_state(ComplexMatrix::Identity(3, 3) / 3.0)), ValidationError);
}

TEST_CASE("relative entropy to a Gibbs state matches its thermodynamic form", "[states][property]") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    const Index d = 2 + i % 4;
    const DensityMatrix rho = random_density_matrix(d, d, rng);
    std::vector<double> e(static_cast<std::size_t>(d));
    // span below 2 keeps every Gibbs weight above the 1e-12 support clip at beta = 10
    for (auto& x : e) x = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
    std::sort(e.begin(), e.end());
    const Hamiltonian h(e);
    const double beta = std::array<double, 3>{0.1, 1.0, 10.0}[i % 3];
    const DensityMatrix g = gibbs_state({beta, h});
    const double thermo = beta * (h.expectation(rho.matrix()) - h.expectation(g.matrix())) -
                          von_neumann_entropy(rho) + von_neumann_entropy(g);
    CHECK(std::abs(relative_entropy(rho, g) - thermo) < 1e-9);
    CHECK(std::abs(relative_entropy_to_gibbs(rho, beta, h) - thermo) < 1e-9);
  }
}

TEST_CASE("unitary invariance of purity and entropy", "[states][property]") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 200; ++i) {
    const Index d = 2 + i % 5;
    const DensityMatrix rho = random_density_matrix(d, 1 + i % d, rng);
    const ComplexMatrix u = random_unitary(d, rng);
    const DensityMatrix r2 = validate_state(u * rho.matrix() * u.adjoint());
    CHECK(std::abs(purity(r2) - purity(rho)) < 1e-9);
    CHECK(std::abs(von_neumann_entropy(r2) - von_neumann_entropy(rho)) < 1e-9);
  }
}

TEST_CASE("random_density_matrix", "[states]") {
  CHECK_THAT(purity(random_density_matrix(5, 1, std::uint64_t{3})), WithinAbs(1.0, 1e-10));
  CHECK(max_abs_diff(random_density_matrix(4, 2, std::uint64_t{99}).matrix(),
                     random_density_matrix(4, 2, std::uint64_t{99}).matrix()) == 0.0);

  SECTION("Hilbert-Schmidt mean is maximally mixed") {
    std::mt19937_64 rng(2024);
    ComplexMatrix mean = ComplexMatrix::Zero(2, 2);
    const int n = 10000;
    for (int i = 0; i < n; ++i) mean += random_density_matrix(2, 2, rng).matrix();
    mean /= static_cast<double>(n);
    CHECK(max_abs_diff(mean, ComplexMatrix::Identity(2, 2) / 2.0) < 0.02);
  }
  CHECK_THROWS(random_density_matrix(3, 0, std::uint64_t{1}));
  CHECK_THROWS(random_density_matrix(3, 4, std::uint64_t{1}));
}
