#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sgf/host_graph.hpp"
#include "sgf/numtheory.hpp"
#include "sgf/small_graph.hpp"

namespace sgf {

/// Number of injective homomorphisms H -> G (ordered embeddings).
/// Limits: v(H) <= 7 when n <= 64, v(H) <= 5 otherwise (SizeLimitError).
BigInt count_injective(const SmallGraph& h, const HostGraph& g);

/// X_H(G): copies of H in G, i.e. count_injective / aut(H). X_∅ = 1.
BigInt count_subgraph_copies(const SmallGraph& h, const HostGraph& g);

/// Plain all-injections enumeration, for cross-checking on tiny hosts.
BigInt count_injective_naive(const SmallGraph& h, const HostGraph& g);

/// Subgraph (not induced) counts of every connected graph on 2..4 vertices.
struct MotifCounts {
  std::int64_t k2 = 0, p2 = 0, k3 = 0;
  std::int64_t k13 = 0, p3 = 0, c4 = 0, paw = 0, diamond = 0, k4 = 0;
};

/// Closed-form counts from degrees and common neighbourhoods. The 4-vertex
/// fields are skipped unless with_four is set.
MotifCounts count_motifs(const HostGraph& g, bool with_four = true);

/// Picks the field for a connected H with 2..4 vertices; throws otherwise.
std::int64_t motif_value(const MotifCounts& m, const SmallGraph& h);

/// True when h is connected with 2..4 vertices.
bool motif_supported(const SmallGraph& h);

/// X_H for possibly disconnected H from connected counts via the partition
/// identity  prod_i aut(H_i) X_{H_i} = sum_P aut(H/P) X_{H/P}, P ranging over
/// partitions that separate the vertices of each component.
BigInt count_via_partitions(const SmallGraph& h, const HostGraph& g,
                            const std::function<BigInt(const SmallGraph&)>& connected_count);

/// Calls f(part) for every set partition of {0..n-1} as a restricted growth
/// string. Parts are admissible only if allowed(u, v) for every pair inside.
void for_each_set_partition(int n, const std::function<bool(int, int)>& allowed,
                            const std::function<void(const std::vector<int>&)>& f);

}  // namespace sgf
