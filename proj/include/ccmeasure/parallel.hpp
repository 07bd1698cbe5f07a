#pragma once

#include <cstddef>
#include <functional>

namespace ccm {

// Worker count: hardware concurrency, capped by CC_MEASURE_THREADS when set.
std::size_t worker_count();

// Runs body(i) for i in [0, n) across worker threads. Each index is written
// by exactly one call, so callers that store into slot i get a result that
// does not depend on scheduling. The first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ccm
