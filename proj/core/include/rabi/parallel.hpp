// parallel.hpp: static-partition parallel loop
//
// Each index is processed exactly once by exactly one worker and the body must
// only write to per-index slots, so results do not depend on the worker count.

#pragma once

#include <cstddef>
#include <functional>

namespace rabi {

// 0 resolves to std::thread::hardware_concurrency() (at least 1).
int resolve_threads(int requested);

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t begin, std::size_t end)>& body);

}  // namespace rabi
