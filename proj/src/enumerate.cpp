#include "sgf/enumerate.hpp"

namespace sgf {

std::vector<std::pair<int, int>> edge_order(int n) {
  std::vector<std::pair<int, int>> out;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) out.emplace_back(i, j);
  return out;
}

SmallCounts counts_from_rows(const std::uint32_t* rows, int n) {
  SmallCounts c;
  long twice_edges = 0, tri3 = 0;
  for (int v = 0; v < n; ++v) {
    const long d = std::popcount(rows[v]);
    twice_edges += d;
    c.cherries += d * (d - 1) / 2;
    for (int w = v + 1; w < n; ++w)
      if ((rows[v] >> w) & 1u) tri3 += std::popcount(rows[v] & rows[w]);
  }
  c.edges = twice_edges / 2;
  c.triangles = tri3 / 3;
  return c;
}

std::vector<std::uint32_t> rows_from_mask(int n, std::uint64_t mask) {
  std::vector<std::uint32_t> rows(n, 0);
  int k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++k)
      if ((mask >> k) & 1u) {
        rows[i] |= 1u << j;
        rows[j] |= 1u << i;
      }
  return rows;
}

}  // namespace sgf
