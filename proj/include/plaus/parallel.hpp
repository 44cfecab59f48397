#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace plaus {

// Runs body(i) for i in [0, count) on up to `jobs` threads. Each index is
// visited exactly once; the first exception thrown by any worker is rethrown.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body);

// Pairwise (cascade) summation; the result depends only on the values and
// their order, never on how they were produced.
double pairwise_sum(std::span<const double> values) noexcept;

}  // namespace plaus
