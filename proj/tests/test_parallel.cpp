#include <vector>

#include "doctest.h"
#include "pathgroup/parallel.hpp"

using namespace pathgroup;

namespace {

std::vector<double> flatten(const std::vector<StepPath>& paths) {
  std::vector<double> out;
  for (const auto& p : paths) {
    const auto c = p.coordinates();
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

}  // namespace

TEST_CASE("map_trials preserves index order") {
  for (int threads : {1, 3, 8}) {
    const auto out = parallel::map_trials(100, threads, [](int k) { return k * k; });
    REQUIRE(out.size() == 100);
    for (int k = 0; k < 100; ++k) CHECK(out[static_cast<std::size_t>(k)] == k * k);
  }
  CHECK(parallel::default_threads() >= 1);
}

TEST_CASE("parallel sampling matches the serial kernel bit for bit") {
  const MeasureSpec spec{16, 8.0, 3, 2024};
  const auto serial = flatten(sample_ball(spec, 300));
  for (int threads : {1, 4, 8}) CHECK(flatten(parallel::sample_ball(spec, 300, threads)) == serial);
}

TEST_CASE("parallel cost matrix and exact transport match serial") {
  const EmpiricalMeasure a(sample_ball(MeasureSpec{8, 1.0, 3, 1}, 64));
  const EmpiricalMeasure b(sample_ball(MeasureSpec{8, 1.0, 3, 2}, 64));
  const Matrix serial = cost_matrix(a, b);
  const double exact = mk_exact(a, b).value;
  for (int threads : {1, 4, 8}) {
    CHECK(parallel::cost_matrix(a, b, threads) == serial);
    CHECK(parallel::mk_exact(a, b, threads).value == exact);
  }
}

TEST_CASE("parallel escape fraction matches serial") {
  const MeasureSpec spec{16, 8.0, 3, 5};
  const auto g = sample_ball_point(MeasureSpec{16, 1.0, 3, 6}, 0);
  const double serial = escape_fraction(spec, g, 400);
  for (int threads : {1, 4, 8}) CHECK(parallel::escape_fraction(spec, g, 400, threads) == serial);
}
