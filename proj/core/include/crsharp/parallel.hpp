#pragma once

#include <cstddef>
#include <functional>

namespace crsharp {

// Worker count: hardware concurrency, capped by CR_SHARP_THREADS when set.
unsigned thread_count();

// Runs body(i) for i in [0, count). Each index is visited exactly once;
// callers store results by index, so the outcome does not depend on the
// thread count. The first exception thrown by a body is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace crsharp
