#pragma once

#include <cstdint>
#include <functional>
#include <string_view>

namespace tlab {

// Worker count: hardware concurrency, capped by TAUBERIAN_LAB_THREADS.
unsigned thread_count();

// Runs body(begin, end, chunk) over [0, n) split into contiguous chunks, one
// per worker. Chunk boundaries depend only on n and the worker count, and the
// callers reduce chunk results with order-independent rules.
void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t, unsigned)>& body,
                     unsigned chunks);

// Derives an independent stream seed from a run seed and a stable task label.
std::uint64_t split_seed(std::uint64_t seed, std::string_view label);
std::uint64_t split_seed(std::uint64_t seed, std::string_view label, std::uint64_t index);

}  // namespace tlab
