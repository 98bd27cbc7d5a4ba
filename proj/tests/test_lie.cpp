#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "pathgroup/lie.hpp"
#include "pathgroup/sampling.hpp"

using namespace pathgroup;

namespace {

AlgebraVector random_algebra(SplitMix64& rng, int dim, double radius) {
  return AlgebraVector::from_coordinates(dim, sample_ball_coordinates(rng, algebra_dimension(dim), radius));
}

GroupMatrix random_rotation(SplitMix64& rng, int dim) { return exp_matrix(random_algebra(rng, dim, 10.0)); }

Matrix e12_minus_e21(int dim) {
  Matrix m = Matrix::Zero(dim, dim);
  m(0, 1) = 1.0;
  m(1, 0) = -1.0;
  return m;
}

}  // namespace

TEST_CASE("hs_inner") {
  auto rng = make_stream(1, 0);
  const AlgebraVector x(e12_minus_e21(3));
  CHECK(hs_inner(AlgebraVector::zero(3), random_algebra(rng, 3, 1.0)) == 0.0);
  CHECK(hs_inner(x, x) == doctest::Approx(2.0).epsilon(1e-15));

  for (int k = 0; k < 100; ++k) {
    const GroupMatrix u = random_rotation(rng, 3);
    const AlgebraVector a = random_algebra(rng, 3, 3.0);
    const AlgebraVector b = random_algebra(rng, 3, 3.0);
    CHECK(std::abs(hs_inner(adjoint(u, a), adjoint(u, b)) - hs_inner(a, b)) <= 1e-12);
  }
  CHECK_THROWS_AS(hs_inner(AlgebraVector::zero(3), AlgebraVector::zero(4)), std::invalid_argument);
}

TEST_CASE("uniform_norm") {
  CHECK(uniform_norm(Matrix::Identity(3, 3)) == doctest::Approx(1.0));
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  CHECK(uniform_norm(d) == doctest::Approx(3.0));

  auto rng = make_stream(2, 0);
  for (int k = 0; k < 200; ++k) {
    Matrix a(3, 3), b(3, 3);
    for (int i = 0; i < 9; ++i) {
      a.data()[i] = 2.0 * rng.uniform() - 1.0;
      b.data()[i] = 2.0 * rng.uniform() - 1.0;
    }
    CHECK(uniform_norm(a) <= a.norm() + 1e-12);
    CHECK(uniform_norm(a * b) <= uniform_norm(a) * uniform_norm(b) + 1e-12);
  }
}

TEST_CASE("exp_matrix: identity and quarter turn") {
  CHECK((exp_matrix(AlgebraVector::zero(3)).matrix() - Matrix::Identity(3, 3)).norm() == 0.0);

  // X = (pi/2)(E_12 - E_21). Expected entries frozen from the 30-term series.
  const Matrix x = std::numbers::pi / 2 * e12_minus_e21(3);
  const Matrix series = oracle::exp_series(x, 30);
  Matrix frozen(3, 3);
  frozen << 0, 1, 0, -1, 0, 0, 0, 0, 1;
  CHECK((series - frozen).norm() < 1e-14);
  CHECK((exp_matrix(AlgebraVector(x)).matrix() - series).norm() < 1e-14);
  CHECK((exp_pade(AlgebraVector(x)).matrix() - series).norm() < 1e-14);
}

TEST_CASE("exp_matrix lands in SO(d) and inverts under negation") {
  auto rng = make_stream(3, 0);
  for (int dim : {2, 3, 4, 5, 7}) {
    const Matrix id = Matrix::Identity(dim, dim);
    for (int k = 0; k < 50; ++k) {
      const AlgebraVector x = random_algebra(rng, dim, 20.0);
      const GroupMatrix e = exp_matrix(x);
      CHECK_NOTHROW(GroupMatrix(e.matrix()));
      CHECK((e.matrix() * exp_matrix(-x).matrix() - id).norm() <= 1e-10);
    }
  }
}

TEST_CASE("exp_pade matches the scaled power series for general d") {
  auto rng = make_stream(4, 0);
  for (int dim : {4, 6, 8}) {
    for (int k = 0; k < 20; ++k) {
      const AlgebraVector x = random_algebra(rng, dim, 8.0);
      const Matrix ref = oracle::exp_series_scaled(x.matrix(), 10, 30);
      CHECK((exp_pade(x).matrix() - ref).norm() <= 1e-12);
    }
  }
  // Small-norm branches of the degree selection.
  for (double scale : {1e-3, 1e-1, 0.6, 1.5}) {
    const AlgebraVector x = random_algebra(rng, 5, 1.0);
    const AlgebraVector y = (scale / hs_norm(x)) * x;
    CHECK((exp_pade(y).matrix() - oracle::exp_series(y.matrix(), 30)).norm() <= 1e-15);
  }
}

TEST_CASE("Rodrigues agrees with scaling and squaring") {
  auto rng = make_stream(5, 0);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const AlgebraVector x = random_algebra(rng, 3, 5.0);
    worst = std::max(worst, (exp_rodrigues(x).matrix() - exp_pade(x).matrix()).norm());
  }
  CHECK(worst <= 1e-12);

  // Large arguments, relative to the unit-size entries of a rotation.
  for (int k = 0; k < 20; ++k) {
    const AlgebraVector x = random_algebra(rng, 3, 1e3);
    CHECK((exp_rodrigues(x).matrix() - exp_pade(x).matrix()).norm() <= 1e-11);
  }
  CHECK_THROWS_AS(exp_rodrigues(AlgebraVector::zero(4)), std::invalid_argument);
}

TEST_CASE("exp is 1-Lipschitz for the uniform norm") {
  auto rng = make_stream(6, 0);
  int violations = 0;
  for (int k = 0; k < 10000; ++k) {
    const AlgebraVector x = random_algebra(rng, 3, 5.0);
    AlgebraVector y = (k % 2 == 0) ? random_algebra(rng, 3, 5.0) : x + random_algebra(rng, 3, 1e-2);
    if (hs_norm(y) > 5.0) y *= 5.0 / hs_norm(y);
    const double lhs = uniform_norm(exp_matrix(x).matrix() - exp_matrix(y).matrix());
    const double rhs = uniform_norm(x.matrix() - y.matrix());
    if (lhs > rhs + 1e-12) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("adjoint") {
  auto rng = make_stream(7, 0);
  const AlgebraVector x = random_algebra(rng, 4, 2.0);
  CHECK((adjoint(GroupMatrix::identity(4), x).matrix() - x.matrix()).norm() == 0.0);
  CHECK(hs_norm(adjoint(random_rotation(rng, 4), AlgebraVector::zero(4))) == 0.0);

  for (int k = 0; k < 100; ++k) {
    const GroupMatrix u = random_rotation(rng, 4);
    const GroupMatrix v = random_rotation(rng, 4);
    const AlgebraVector y = random_algebra(rng, 4, 3.0);
    CHECK(std::abs(hs_norm(adjoint(u, y)) - hs_norm(y)) <= 1e-12);
    CHECK((adjoint(u, adjoint(v, y)).matrix() - adjoint(u * v, y).matrix()).norm() <= 1e-12);
  }

  const AlgebraBasis basis(4);
  const GroupMatrix u = random_rotation(rng, 4);
  for (int i = 0; i < basis.size(); ++i) {
    for (int j = 0; j < basis.size(); ++j) {
      const double expected = i == j ? 1.0 : 0.0;
      CHECK(std::abs(hs_inner(basis[i], basis[j]) - expected) <= 1e-12);
      CHECK(std::abs(hs_inner(adjoint(u, basis[i]), adjoint(u, basis[j])) - expected) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(adjoint(GroupMatrix::identity(3), x), std::invalid_argument);
}

TEST_CASE("validated constructors") {
  Matrix sym = Matrix::Identity(3, 3);
  CHECK_THROWS_AS(AlgebraVector{sym}, std::invalid_argument);
  CHECK_THROWS_AS(AlgebraVector{Matrix::Zero(2, 3)}, std::invalid_argument);
  CHECK_THROWS_AS(GroupMatrix{2.0 * Matrix::Identity(3, 3)}, std::invalid_argument);
  Matrix reflection = Matrix::Identity(3, 3);
  reflection(2, 2) = -1.0;
  CHECK_THROWS_AS(GroupMatrix{reflection}, std::invalid_argument);

  const AlgebraBasis basis(3);
  CHECK(basis.size() == 3);
  CHECK(algebra_dimension(5) == 10);
  CHECK_THROWS_AS(AlgebraBasis(1), std::invalid_argument);

  auto rng = make_stream(8, 0);
  const AlgebraVector x = random_algebra(rng, 5, 2.0);
  const AlgebraVector back = AlgebraVector::from_coordinates(5, x.coordinates());
  CHECK((back.matrix() - x.matrix()).norm() <= 1e-15);
}
