#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sgf/catalog.hpp"
#include "sgf/factor_algebra.hpp"
#include "sgf/host_graph.hpp"
#include "sgf/pell.hpp"

namespace sgf {

/// g_H(G) = 0 exactly for every member (disconnected members included).
/// False when G has fewer vertices than some member.
bool is_hat_proportional(const HostGraph& g, const BigRational& p, const GraphFamily& family);

/// Integer coefficients of Phi(X_H) for connected H on 2..5 vertices:
/// v!/aut, 2 (v-2)! e / aut and 4 X_{K2+P2}(H) / aut (zero below 5 vertices).
struct PhiCoefficients {
  SmallGraph h;
  BigInt leading, linear, cross;
};
const PhiCoefficients& phi_coefficients(const SmallGraph& h);

/// K2 followed by every connected graph on 3..5 vertices, catalog order.
const std::vector<SmallGraph>& hpc_graphs();

/// Phi(X_H) = a^{e-2}/b^e (leading a^2 C(n,v) + linear a C(n-2,v-2) h - 2 cross (b-a)(n-2) h).
BigRational phi_x_value(const SmallGraph& h, const BigInt& n, const BigInt& a, const BigInt& b, const BigRational& h_value);

enum class CheckPath { Both, Characterization, Oracle };

struct CompatVerdict {
  bool verdict = false;
  std::optional<bool> characterization;
  std::optional<bool> oracle;
  std::string detail;  // first failing condition or quantity
  bool consistent() const { return !characterization || !oracle || *characterization == *oracle; }
};

/// p-PC: the gamma -> 0 evaluation on C2 u C3 is integral. p = a/b in lowest
/// terms with 0 < a < b, n >= 3. The verdict follows the oracle when it runs.
CompatVerdict is_pc(const BigInt& n, const BigInt& a, const BigInt& b, CheckPath path = CheckPath::Both);

/// p-SPC: the same on C2 u C3 u C4 with gamma_{2K2} = -C(n,2)/2. n >= 4.
CompatVerdict is_spc(const BigInt& n, const BigInt& a, const BigInt& b, CheckPath path = CheckPath::Both);

/// Phi(X_H) on C2 u C3 u C4 under gamma -> 0 (gamma_{2K2} = -C(n,2)/2).
BigRational spc_phi_value(const SmallGraph& h, const BigInt& n, const BigRational& p);

enum class HpcSign { Plus, Minus };
char sign_char(HpcSign s);
HpcSign parse_sign(const std::string& text);

struct HpcWitness {
  BigInt n, a, b;
  HpcSign sign = HpcSign::Plus;
  BigInt D;
  std::optional<BigInt> sqrtD;
  std::optional<BigInt> h;
  bool verdict = false;
  std::optional<SmallGraph> failing_H;
  std::string reason;
};

/// D = 2a(b-a)n(n-1) + (b-2a)^2.
BigInt hpc_discriminant(const BigInt& n, const BigInt& a, const BigInt& b);

/// Direct check of every Phi(X_H), H in hpc_graphs(), after the cheap
/// necessary conditions (D square, K2 integral, b^8 | 2h(n-2)). n >= 5.
HpcWitness is_hpc(const BigInt& n, const BigInt& a, const BigInt& b, HpcSign sign);

enum class HpcScanMode { Brute, Pell, Congruence };

struct HpcScanOptions {
  HpcScanMode mode = HpcScanMode::Brute;
  BigInt n_max = 1000;    // brute
  long max_digits = 400;  // pell and congruence: largest n considered
  long count = 3;         // congruence: witnesses to generate
  int workers = 1;
};

struct HpcScanResult {
  std::vector<HpcWitness> accepted;
  long tested = 0;
  std::string note;
};

/// Brute: every 5 <= n <= n_max. Pell: every n <= 10^max_digits with D square,
/// from the classes of T^2 - 2a(b-a) U^2 = 2(3a-b)(3a-2b), U = 2n-1.
/// Congruence: n = 2 mod 2b^12 with D square, from (2b + 3 sqrt d) times a
/// power of the unit that is 1 mod 4b^12; an empty result with a note when the
/// first such n exceeds the digit cap. Every emitted witness passed is_hpc.
HpcScanResult hpc_scan(const BigInt& a, const BigInt& b, HpcSign sign, const HpcScanOptions& options);

/// Order of r + s sqrt d (a unit of norm 1) in (Z/mZ)[sqrt d] with m given by
/// its prime factorization, found at each prime by search and lifted one power
/// at a time. Throws CapError when the search at a prime exceeds max_base steps.
BigInt unit_order_mod(const BigInt& d, const BigInt& r, const BigInt& s,
                      const std::vector<std::pair<std::uint64_t, unsigned>>& modulus, long max_base = 1'000'000);

struct NotPermissibleError : std::domain_error {
  using std::domain_error::domain_error;
};

struct CountPrediction {
  double probability = 0;
  double log10_probability = 0;
  std::optional<double> count;  // labeled graphs, when K2 is a member
  std::optional<double> log10_count;
  std::optional<BigInt> edges;  // forced edge count p C(n,2)
};

/// Local-limit prediction of the probability that G(n,p) is proportional for
/// the family, and the implied number of labeled graphs. Throws
/// NotPermissibleError when the zero tuple is not permissible.
CountPrediction predicted_count_proportional(const GraphFamily& family, const ProblemContext& ctx);

}  // namespace sgf
