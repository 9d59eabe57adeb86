#include "sgf/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace sgf {

int default_workers() {
  if (const char* env = std::getenv("SGF_WORKERS")) {
    try {
      int w = std::stoi(env);
      if (w >= 1) return w;
    } catch (const std::exception&) {
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::uint64_t shard_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void parallel_shards(std::uint64_t shards, int workers, const std::function<void(std::uint64_t)>& body) {
  if (workers <= 1 || shards <= 1) {
    for (std::uint64_t s = 0; s < shards; ++s) body(s);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (;;) {
      std::uint64_t s = next.fetch_add(1);
      if (s >= shards) return;
      try {
        body(s);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = shards;
        return;
      }
    }
  };
  const int n = static_cast<int>(std::min<std::uint64_t>(shards, static_cast<std::uint64_t>(workers)));
  std::vector<std::thread> pool;
  for (int i = 0; i < n; ++i) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace sgf
