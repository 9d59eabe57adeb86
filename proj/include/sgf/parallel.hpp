#pragma once

#include <cstdint>
#include <functional>

namespace sgf {

/// Worker count from SGF_WORKERS, else hardware concurrency (at least 1).
int default_workers();

/// Seed for shard `index` of a run seeded with `seed` (splitmix64 mixing).
/// Depends only on (seed, index), never on the worker that runs the shard.
std::uint64_t shard_seed(std::uint64_t seed, std::uint64_t index);

/// Runs body(shard) for shard in [0, shards) on up to `workers` threads.
/// Shards are claimed dynamically; callers merge per-shard results in shard
/// order to stay worker-count independent. The first exception is rethrown.
void parallel_shards(std::uint64_t shards, int workers, const std::function<void(std::uint64_t)>& body);

}  // namespace sgf
