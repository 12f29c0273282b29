#pragma once

#include <cstddef>
#include <functional>

namespace dsi {

/// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = hardware count).
/// Each index must be independent; results written by index stay bit-identical
/// for any thread count. Exceptions are captured and rethrown on the caller.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

} // namespace dsi
