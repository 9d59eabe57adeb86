#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sgf/numtheory.hpp"
#include "sgf/small_graph.hpp"

namespace sgf {

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kMaxHostVertices = 4096;

/// Labeled simple graph with one bit-mask row per vertex.
class HostGraph {
 public:
  HostGraph() = default;
  explicit HostGraph(int n);

  static HostGraph complete(int n);
  static HostGraph from_labeled(const LabeledGraph& g);

  int n() const { return n_; }
  long edge_count() const { return m_; }
  int words() const { return words_; }
  const std::uint64_t* row(int v) const { return bits_.data() + static_cast<std::size_t>(v) * words_; }
  bool adjacent(int u, int v) const { return (row(u)[v >> 6] >> (v & 63)) & 1u; }
  int degree(int v) const;

  void add_edge(int u, int v);
  void remove_edge(int u, int v);
  void toggle_edge(int u, int v);

  HostGraph complement() const;
  /// Symmetric, loop-free, and m equals half the popcount total.
  bool check_invariants() const;

  friend bool operator==(const HostGraph&, const HostGraph&) = default;

 private:
  std::uint64_t* mut_row(int v) { return bits_.data() + static_cast<std::size_t>(v) * words_; }

  int n_ = 0;
  int words_ = 0;
  long m_ = 0;
  std::vector<std::uint64_t> bits_;
};

std::string graph6_emit(const HostGraph& g);
HostGraph graph6_parse(std::string_view text);

/// graph6 for a small labeled graph (n <= 16).
std::string graph6_emit(const LabeledGraph& g);

/// Draws independent edges with probability a/b using exact integer
/// comparisons (no floating point), so results are bit-reproducible.
class EdgeSampler {
 public:
  EdgeSampler(std::uint64_t a, std::uint64_t b);
  bool operator()(std::mt19937_64& rng);
  /// Fills a G(n,p) sample into g (which is resized/cleared).
  void sample(int n, std::mt19937_64& rng, HostGraph& g);

 private:
  std::uint64_t a_, b_;
  int shift_ = -1;  // log2(b) when b is a power of two
  std::uint64_t pool_ = 0;
  int pool_bits_ = 0;
};

HostGraph sample_gnp(int n, const BigRational& p, std::mt19937_64& rng);

/// Numerator/denominator of p as machine integers; throws when out of range
/// or when p is not in (0,1).
std::pair<std::uint64_t, std::uint64_t> small_fraction(const BigRational& p);

}  // namespace sgf
