#include "tauberian/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace tlab {

unsigned thread_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TAUBERIAN_LAB_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return hw;
}

void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t, unsigned)>& body,
                     unsigned chunks) {
  chunks = std::max(1u, chunks);
  if (n == 0) return;
  if (chunks == 1 || n < 2 * chunks) {
    body(0, n, 0);
    return;
  }
  std::vector<std::thread> workers;
  for (unsigned c = 0; c < chunks; ++c) {
    std::size_t b = n * c / chunks, e = n * (c + 1) / chunks;
    workers.emplace_back([&, b, e, c] { body(b, e, c); });
  }
  for (auto& t : workers) t.join();
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t split_seed(std::uint64_t seed, std::string_view label) {
  return splitmix64(seed ^ splitmix64(fnv1a(label)));
}

std::uint64_t split_seed(std::uint64_t seed, std::string_view label, std::uint64_t index) {
  return splitmix64(split_seed(seed, label) + splitmix64(index));
}

}  // namespace tlab
