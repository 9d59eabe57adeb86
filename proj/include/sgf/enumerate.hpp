#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sgf {

/// Edge, cherry (P2) and triangle counts of a labeled graph.
struct SmallCounts {
  long edges = 0;
  long cherries = 0;
  long triangles = 0;
  bool operator==(const SmallCounts&) const = default;
};

/// Pair (i, j), i < j, for edge bit k in graph6 order (j = 1..n-1, i < j).
std::vector<std::pair<int, int>> edge_order(int n);

/// Counts from adjacency rows (n <= 32), computed from scratch.
SmallCounts counts_from_rows(const std::uint32_t* rows, int n);

/// Adjacency rows of the graph whose graph6-order edge bits are `mask`.
std::vector<std::uint32_t> rows_from_mask(int n, std::uint64_t mask);

/// Visits all 2^C(n,2) labeled graphs on n <= 8 vertices in reflected Gray
/// code order, flipping one edge per step and updating the counts in O(1):
/// an added edge uv contributes deg(u) + deg(v) cherries and
/// |N(u) ∩ N(v)| triangles. visit(mask, rows, counts) sees every graph once,
/// starting with the empty graph. Graphs in [first, last) of the Gray
/// sequence are visited, so ranges can be sharded.
template <class Visit>
void gray_enumerate(int n, std::uint64_t first, std::uint64_t last, Visit&& visit) {
  if (n < 0 || n > 8) throw std::invalid_argument("Gray-code enumeration supports at most 8 vertices");
  const auto order = edge_order(n);
  const std::uint64_t total = std::uint64_t{1} << order.size();
  if (last > total) last = total;
  if (first >= last) return;
  std::uint64_t mask = first ^ (first >> 1);
  std::vector<std::uint32_t> start = rows_from_mask(n, mask);
  std::uint32_t rows[8] = {0};
  for (int v = 0; v < n; ++v) rows[v] = start[v];
  int deg[8] = {0};
  for (int v = 0; v < n; ++v) deg[v] = std::popcount(rows[v]);
  SmallCounts c = counts_from_rows(rows, n);
  visit(mask, static_cast<const std::uint32_t*>(rows), static_cast<const SmallCounts&>(c));
  for (std::uint64_t i = first + 1; i < last; ++i) {
    const int bit = std::countr_zero(i);
    const auto [u, v] = order[bit];
    const int common = std::popcount(rows[u] & rows[v]);
    if ((mask >> bit) & 1u) {
      rows[u] &= ~(1u << v);
      rows[v] &= ~(1u << u);
      --deg[u];
      --deg[v];
      c.edges -= 1;
      c.cherries -= deg[u] + deg[v];
      c.triangles -= common;
    } else {
      c.edges += 1;
      c.cherries += deg[u] + deg[v];
      c.triangles += common;
      rows[u] |= 1u << v;
      rows[v] |= 1u << u;
      ++deg[u];
      ++deg[v];
    }
    mask ^= std::uint64_t{1} << bit;
    visit(mask, static_cast<const std::uint32_t*>(rows), static_cast<const SmallCounts&>(c));
  }
}

}  // namespace sgf
