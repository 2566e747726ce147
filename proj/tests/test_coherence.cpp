#include <catch2/catch.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ergocoh/coherence.hpp"
#include "ergocoh/errors.hpp"

using namespace ergocoh;
using Catch::Matchers::WithinAbs;

namespace {

DensityMatrix running_example() {
  ComplexMatrix m(2, 2);
  m << 0.3, 0.2, 0.2, 0.7;
  return validate_state(m);
}

PermutationUnitary random_perm(Index d, std::mt19937_64& rng) {
  std::vector<Index> p(static_cast<std::size_t>(d));
  std::iota(p.begin(), p.end(), Index{0});
  std::shuffle(p.begin(), p.end(), rng);
  std::vector<double> ph;
  for (Index k = 0; k < d; ++k) ph.push_back(std::uniform_real_distribution<double>(-3.0, 3.0)(rng));
  return PermutationUnitary(p, ph);
}

}  // namespace

TEST_CASE("PermutationUnitary", "[coherence]") {
  CHECK_THROWS_AS(PermutationUnitary({0, 0}), ValidationError);
  CHECK_THROWS_AS(PermutationUnitary({0, 2}), ValidationError);
  CHECK_THROWS_AS(PermutationUnitary({1, 0}, {0.1}), ValidationError);
  CHECK(PermutationUnitary::identity(3).is_identity());
  CHECK_FALSE(PermutationUnitary({0, 1}, {0.0, 0.3}).is_identity());

  const PermutationUnitary v({2, 0, 1}, {0.1, 0.2, 0.3});
  const ComplexMatrix m = v.matrix();
  CHECK(max_abs_diff(m.adjoint() * m, ComplexMatrix::Identity(3, 3)) < 1e-15);
  CHECK(std::abs(m(0, 2) - std::polar(1.0, -0.1)) < 1e-15);
}

TEST_CASE("dephase", "[coherence]") {
  const DensityMatrix diag = DensityMatrix::diagonal(Eigen::Vector3d(0.5, 0.3, 0.2));
  CHECK(max_abs_diff(dephase(diag).matrix(), diag.matrix()) == 0.0);
  const DensityMatrix d = dephase(running_example());
  CHECK(d(0, 0).real() == 0.3);
  CHECK(d(1, 1).real() == 0.7);
  CHECK(d(0, 1) == Complex(0.0, 0.0));
  CHECK(max_abs_diff(dephase(maximally_coherent_state(3)).matrix(), ComplexMatrix::Identity(3, 3) / 3.0) < 1e-15);
}

TEST_CASE("relative entropy of coherence", "[coherence]") {
  CHECK(rel_entropy_coherence(DensityMatrix::diagonal(Eigen::Vector2d(0.3, 0.7))) == 0.0);
  CHECK_THAT(rel_entropy_coherence(running_example()), WithinAbs(0.0875778856285836, 1e-12));
  for (Index d = 2; d <= 6; ++d) {
    CHECK_THAT(rel_entropy_coherence(maximally_coherent_state(d)), WithinAbs(std::log(static_cast<double>(d)), 1e-12));
  }
}

TEST_CASE("l1 coherence", "[coherence]") {
  CHECK(l1_coherence(DensityMatrix::diagonal(Eigen::Vector2d(0.3, 0.7))) == 0.0);
  CHECK_THAT(l1_coherence(running_example()), WithinAbs(0.4, 1e-15));
  for (Index d = 2; d <= 6; ++d) {
    CHECK_THAT(l1_coherence(maximally_coherent_state(d)), WithinAbs(static_cast<double>(d - 1), 1e-13));
  }
}

TEST_CASE("apply_permutation", "[coherence]") {
  const DensityMatrix ex = running_example();
  CHECK(max_abs_diff(apply_permutation(ex, PermutationUnitary::identity(2)).matrix(), ex.matrix()) == 0.0);
  const DensityMatrix swapped = apply_permutation(DensityMatrix::diagonal(Eigen::Vector2d(0.3, 0.7)),
                                                  PermutationUnitary({1, 0}));
  CHECK(swapped(0, 0).real() == 0.7);
  CHECK(swapped(1, 1).real() == 0.3);
  CHECK_THROWS_AS(apply_permutation(ex, PermutationUnitary::identity(3)), ValidationError);

  SECTION("matches conjugation by the unitary") {
    std::mt19937_64 rng(4);
    const DensityMatrix rho = random_density_matrix(4, 3, rng);
    const PermutationUnitary v = random_perm(4, rng);
    const ComplexMatrix vm = v.matrix();
    CHECK(max_abs_diff(apply_permutation(rho, v).matrix(), vm * rho.matrix() * vm.adjoint()) < 1e-15);
  }
}

TEST_CASE("coherence properties on random states", "[coherence][property]") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    const Index d = 2 + i % 5;
    const DensityMatrix rho = random_density_matrix(d, 1 + i % d, rng);
    const DensityMatrix delta = dephase(rho);

    CHECK(max_abs_diff(dephase(delta).matrix(), delta.matrix()) == 0.0);
    CHECK(std::abs(rel_entropy_coherence(rho) - relative_entropy(rho, delta)) < 1e-9);
    CHECK(purity(delta) <= purity(rho) + 1e-15);
    CHECK(purity(delta) < purity(rho));  // random states are never diagonal

    const DensityMatrix moved = apply_permutation(rho, random_perm(d, rng));
    CHECK((hermitian_eigenvalues(moved.matrix()) - hermitian_eigenvalues(rho.matrix())).cwiseAbs().maxCoeff() <
          1e-10);
    CHECK(std::abs(rel_entropy_coherence(moved) - rel_entropy_coherence(rho)) < 1e-10);
  }
}
