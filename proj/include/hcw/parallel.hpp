#pragma once

#include <cstddef>
#include <functional>

namespace hcw {

/// Worker count from HCW_THREADS (default 1).
unsigned thread_count();

/// Runs body(i) for i in [0, n). Each index is visited exactly once; callers
/// write to disjoint slots so the result does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hcw
