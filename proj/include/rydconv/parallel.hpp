#pragma once

#include <cstddef>
#include <functional>

namespace rydconv {

// Work-queue parallel loop. Each index runs exactly once; callers write
// results into index-addressed slots, so the reduction order (and therefore
// the output) does not depend on scheduling. threads == 0 means hardware
// concurrency; 1 runs inline.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& body);

} // namespace rydconv
