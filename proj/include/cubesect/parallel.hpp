#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace cubesect {

/// Worker count: hardware concurrency, capped by CUBE_SECTIONS_THREADS when
/// that variable holds a positive integer.
std::size_t worker_count();

/// Runs body(i) for i in [0, count) on up to worker_count() threads. Each
/// index is processed exactly once; callers write results into per-index
/// slots so the outcome does not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// SplitMix64 finalizer; derives independent per-task seeds from a base seed.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace cubesect
