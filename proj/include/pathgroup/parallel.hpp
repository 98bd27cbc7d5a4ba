#pragma once

// OpenMP counterparts of the serial kernels in sampling and transport. Work is
// partitioned by trial index and written to index-addressed slots, so the
// output never depends on the thread count.

#include <cstdint>
#include <exception>
#include <vector>

#include "pathgroup/sampling.hpp"
#include "pathgroup/transport.hpp"

namespace pathgroup::parallel {

/// Number of workers OpenMP would use by default.
int default_threads();

/// out[k] = fn(k) for k in [0, count), evaluated on `threads` workers. If any
/// call throws, the exception of the lowest failing index is rethrown after the
/// loop.
template <class Fn>
auto map_trials(int count, int threads, Fn&& fn) -> std::vector<decltype(fn(0))> {
  std::vector<decltype(fn(0))> out(static_cast<std::size_t>(count));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads > 0 ? threads : 1)
  for (int k = 0; k < count; ++k) {
    try {
      out[static_cast<std::size_t>(k)] = fn(k);
    } catch (...) {
      errors[static_cast<std::size_t>(k)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<StepPath> sample_ball(const MeasureSpec& spec, int count, int threads);

Matrix cost_matrix(const EmpiricalMeasure& a, const EmpiricalMeasure& b, int threads);

TransportReport mk_exact(const EmpiricalMeasure& a, const EmpiricalMeasure& b, int threads);

double escape_fraction(const MeasureSpec& spec, const StepPath& g, int count, int threads);

}  // namespace pathgroup::parallel
