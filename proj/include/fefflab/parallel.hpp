#pragma once

#include <cstddef>
#include <functional>

namespace fefflab {

/// Worker count: FEFFLAB_THREADS when set to a positive integer, else the hardware concurrency.
unsigned worker_count();

/// Σ_{i<n} f(i). Terms are grouped into fixed-size blocks summed in index order,
/// so the result is bit-identical for any worker count. The first exception
/// thrown by f is rethrown.
double parallel_sum(std::size_t n, const std::function<double(std::size_t)>& f);

/// Calls f(i) for every i < n, possibly concurrently, handing out `grain` indices at a time.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f, std::size_t grain = 1);

}  // namespace fefflab
