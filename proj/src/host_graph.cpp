#include "sgf/host_graph.hpp"

#include <bit>

namespace sgf {

HostGraph::HostGraph(int n) : n_(n), words_((n + 63) / 64) {
  if (n < 0 || n > kMaxHostVertices)
    throw SizeLimitError("host graph limited to 4096 vertices, got " + std::to_string(n));
  bits_.assign(static_cast<std::size_t>(n) * words_, 0);
}

HostGraph HostGraph::complete(int n) {
  HostGraph g(n);
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) g.add_edge(i, j);
  return g;
}

HostGraph HostGraph::from_labeled(const LabeledGraph& lg) {
  HostGraph g(lg.vertex_count());
  for (auto [i, j] : lg.edges()) g.add_edge(i, j);
  return g;
}

int HostGraph::degree(int v) const {
  int d = 0;
  const std::uint64_t* r = row(v);
  for (int w = 0; w < words_; ++w) d += std::popcount(r[w]);
  return d;
}

void HostGraph::add_edge(int u, int v) {
  if (u == v) throw std::invalid_argument("self loop");
  if (adjacent(u, v)) return;
  mut_row(u)[v >> 6] |= std::uint64_t{1} << (v & 63);
  mut_row(v)[u >> 6] |= std::uint64_t{1} << (u & 63);
  ++m_;
}

void HostGraph::remove_edge(int u, int v) {
  if (!adjacent(u, v)) return;
  mut_row(u)[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
  mut_row(v)[u >> 6] &= ~(std::uint64_t{1} << (u & 63));
  --m_;
}

void HostGraph::toggle_edge(int u, int v) {
  if (adjacent(u, v))
    remove_edge(u, v);
  else
    add_edge(u, v);
}

HostGraph HostGraph::complement() const {
  HostGraph out(n_);
  for (int j = 1; j < n_; ++j)
    for (int i = 0; i < j; ++i)
      if (!adjacent(i, j)) out.add_edge(i, j);
  return out;
}

bool HostGraph::check_invariants() const {
  long total = 0;
  for (int v = 0; v < n_; ++v) {
    if (adjacent(v, v)) return false;
    for (int w = 0; w < n_; ++w)
      if (adjacent(v, w) != adjacent(w, v)) return false;
    total += degree(v);
  }
  return total == 2 * m_;
}

namespace {

void emit_header(std::string& out, long n) {
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else {
    out.push_back('~');
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  }
}

template <class Adj>
std::string emit(long n, Adj adjacent) {
  std::string out;
  emit_header(out, n);
  int acc = 0, filled = 0;
  for (long j = 1; j < n; ++j) {
    for (long i = 0; i < j; ++i) {
      acc = (acc << 1) | (adjacent(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
  return out;
}

int sextet(std::string_view text, std::size_t pos) {
  if (pos >= text.size()) throw ParseError("graph6: truncated input");
  int c = static_cast<unsigned char>(text[pos]);
  if (c < 63 || c > 126) throw ParseError("graph6: invalid character at offset " + std::to_string(pos));
  return c - 63;
}

}  // namespace

std::string graph6_emit(const HostGraph& g) {
  return emit(g.n(), [&](long i, long j) { return g.adjacent(static_cast<int>(i), static_cast<int>(j)); });
}

std::string graph6_emit(const LabeledGraph& g) {
  return emit(g.vertex_count(), [&](long i, long j) { return g.adjacent(static_cast<int>(i), static_cast<int>(j)); });
}

HostGraph graph6_parse(std::string_view text) {
  if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
  if (text.rfind(">>graph6<<", 0) == 0) text.remove_prefix(10);
  if (text.empty()) throw ParseError("graph6: empty input");
  std::size_t pos = 0;
  long n = 0;
  if (text[0] != '~') {
    n = sextet(text, 0);
    pos = 1;
  } else if (text.size() > 1 && text[1] == '~') {
    for (std::size_t k = 2; k < 8; ++k) n = (n << 6) | sextet(text, k);
    pos = 8;
  } else {
    for (std::size_t k = 1; k < 4; ++k) n = (n << 6) | sextet(text, k);
    pos = 4;
  }
  if (n > kMaxHostVertices) throw SizeLimitError("graph6: " + std::to_string(n) + " vertices exceeds 4096");
  const long pairs = n * (n - 1) / 2;
  const std::size_t body = static_cast<std::size_t>((pairs + 5) / 6);
  if (text.size() < pos + body) throw ParseError("graph6: truncated bit body");
  if (text.size() > pos + body) throw ParseError("graph6: trailing characters");
  HostGraph g(static_cast<int>(n));
  long k = 0;
  for (long j = 1; j < n; ++j) {
    for (long i = 0; i < j; ++i, ++k) {
      int bits = sextet(text, pos + static_cast<std::size_t>(k / 6));
      if ((bits >> (5 - k % 6)) & 1) g.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
  }
  for (std::size_t c = pos; c < text.size(); ++c) sextet(text, c);
  return g;
}

std::pair<std::uint64_t, std::uint64_t> small_fraction(const BigRational& p) {
  if (p <= 0 || p >= 1) throw std::domain_error("p must lie strictly between 0 and 1");
  if (!p.get_den().fits_ulong_p()) throw std::domain_error("denominator of p too large");
  return {p.get_num().get_ui(), p.get_den().get_ui()};
}

EdgeSampler::EdgeSampler(std::uint64_t a, std::uint64_t b) : a_(a), b_(b) {
  if (a == 0 || a >= b) throw std::domain_error("p must lie strictly between 0 and 1");
  if (std::has_single_bit(b)) shift_ = std::countr_zero(b);
}

bool EdgeSampler::operator()(std::mt19937_64& rng) {
  if (shift_ >= 0) {
    if (pool_bits_ < shift_) {
      pool_ = rng();
      pool_bits_ = 64;
    }
    std::uint64_t r = pool_ & ((std::uint64_t{1} << shift_) - 1);
    pool_ >>= shift_;
    pool_bits_ -= shift_;
    return r < a_;
  }
  // Lemire's multiply-shift with rejection: exact uniform on [0, b).
  const std::uint64_t threshold = (0 - b_) % b_;
  while (true) {
    unsigned __int128 m = static_cast<unsigned __int128>(rng()) * b_;
    if (static_cast<std::uint64_t>(m) >= threshold) return static_cast<std::uint64_t>(m >> 64) < a_;
  }
}

void EdgeSampler::sample(int n, std::mt19937_64& rng, HostGraph& g) {
  g = HostGraph(n);
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if ((*this)(rng)) g.add_edge(i, j);
}

HostGraph sample_gnp(int n, const BigRational& p, std::mt19937_64& rng) {
  auto [a, b] = small_fraction(p);
  EdgeSampler sampler(a, b);
  HostGraph g(n);
  sampler.sample(n, rng, g);
  return g;
}

}  // namespace sgf
