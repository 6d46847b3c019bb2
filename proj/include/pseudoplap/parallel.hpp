#pragma once

#include <cstddef>
#include <functional>

namespace pseudoplap {

/// Worker count: $PSEUDOPLAP_THREADS when set (at most 256), else hardware concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, count) on worker_count() threads. Each index is
/// handled exactly once; results must go to per-index slots so output order
/// never depends on scheduling. The first exception thrown is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace pseudoplap
