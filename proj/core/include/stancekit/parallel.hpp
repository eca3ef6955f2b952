#ifndef STANCEKIT_PARALLEL_HPP
#define STANCEKIT_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace stancekit {

/**
 * Runs `fn(begin, end)` over contiguous chunks of [0, n) on up to `jobs`
 * threads. With `jobs <= 1` the call is made inline on the caller's thread.
 * The first exception thrown by any worker is rethrown after all workers join.
 */
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t, std::size_t)>& fn);

} // namespace stancekit

#endif
