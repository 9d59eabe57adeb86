#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sgf/catalog.hpp"
#include "sgf/factor_algebra.hpp"

namespace sgf {

enum class SearchMode { Exhaustive, Anneal };

struct SearchOptions {
  SearchMode mode = SearchMode::Exhaustive;
  std::uint64_t seed = 1;
  int workers = 1;
  long budget = 2'000'000;  // anneal: total edge-swap proposals
  long want = 1;            // anneal: stop after this many distinct graphs
  bool collect = true;      // exhaustive: keep the graph6 strings, not only the count
  bool verify = true;       // re-check every returned graph with is_hat_proportional
};

struct SearchResult {
  std::uint64_t count = 0;
  std::vector<std::string> graphs;  // graph6, labeled
  long verified = 0;
  std::string note;
};

struct NoSolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exhaustive: every labeled graph on n <= 8 vertices whose counts equal the
/// values at g = 0 (members must be among K2, P2, K3). Anneal: edge swaps at a
/// fixed edge count p C(n,2) minimizing sum_H (b^{e(H)} g_H)^2; throws
/// NoSolutionError when no exact zero turns up within the budget.
SearchResult search_proportional(const ProblemContext& ctx, const GraphFamily& family, const SearchOptions& options);

}  // namespace sgf
