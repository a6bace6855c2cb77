#pragma once

#include <cstddef>
#include <functional>

namespace ratdyn {

// Worker count: hardware concurrency, capped by RATDYN_THREADS when set.
unsigned worker_count();

// Runs body(i) for i in [0, n). Each index is visited exactly once; callers
// write into preallocated slots so results do not depend on the split.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  unsigned workers = 0);

}  // namespace ratdyn
