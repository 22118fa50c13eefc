#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>

namespace tetlab {

/// Parses a TETLAB_THREADS-style value. Returns nullopt unless it is a
/// positive decimal integer.
std::optional<unsigned> parse_thread_count(std::string_view text);

/// Worker count: TETLAB_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned worker_count();

/// Calls body(i) for every i in [0, n). Indices are split into contiguous
/// blocks, one per worker. Callers write to per-index slots so the result does
/// not depend on the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace tetlab
