#pragma once

#include <cstddef>
#include <functional>

namespace loggap {

/// Worker count for internal parallel loops. Honours LOGGAP_THREADS when set
/// to a positive integer, otherwise std::thread::hardware_concurrency().
unsigned thread_count();

/// Runs body(begin, end) over contiguous chunks of [0, n). Each index is
/// visited exactly once; results must not depend on how the range is split.
void parallel_for_chunks(std::size_t n,
                         const std::function<void(std::size_t, std::size_t)>& body,
                         std::size_t min_chunk = 1 << 14);

}  // namespace loggap
