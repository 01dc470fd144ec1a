#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace oising {

/// Worker count: SIM_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
[[nodiscard]] std::size_t worker_count();

/// Runs body(i) for i in [0, count) on up to worker_count() threads. Callers
/// write results into slot i so that reductions happen in index order. The
/// first exception thrown by any task is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Per-task seed from (master, index); does not depend on scheduling.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace oising
