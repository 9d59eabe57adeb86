#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <regex>
#include <sstream>

#include "sgf/catalog.hpp"
#include "sgf/evaluation.hpp"
#include "sgf/factor_map.hpp"
#include "sgf/host_graph.hpp"
#include "sgf/identities.hpp"
#include "sgf/ifs.hpp"
#include "sgf/llt.hpp"
#include "sgf/parallel.hpp"
#include "sgf/pell.hpp"
#include "sgf/proportional.hpp"
#include "sgf/report.hpp"
#include "sgf/search.hpp"

namespace sgf::cli {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Outcome {
  Report report;
  int code = kExitOk;
  std::optional<std::string> plain;  // replaces the report when no --format was given
};

struct Config {
  std::string format = "json";
  std::string output;
  int workers = 1;
  std::uint64_t seed = 1;
  std::string p;
  std::string n;
  std::string family = "C2,C3";
};

BigRational p_value(const Config& cfg) {
  if (cfg.p.empty()) throw UsageError("--p is required");
  return parse_rational(normalize_p(cfg.p));
}

long small_n(const Config& cfg, long lo, long hi) {
  if (cfg.n.empty()) throw UsageError("--n is required");
  const BigInt n = parse_bigint(cfg.n);
  if (n < lo || n > hi) throw UsageError("--n must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return n.get_si();
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (out.empty()) throw UsageError("empty list");
  return out;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  for (const std::string& s : split(text)) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw UsageError("not a number: '" + s + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<BigRational> parse_rationals(const std::string& text) {
  std::vector<BigRational> out;
  for (const std::string& s : split(text)) out.push_back(parse_rational(s));
  return out;
}

Json string_array(const std::vector<BigRational>& v) {
  Json j = Json::array();
  for (const BigRational& q : v) j.push_back(is_integer(q) ? to_decimal(q.get_num()) : to_fraction_string(q));
  return j;
}

Json float_array(const std::vector<double>& v) {
  Json j = Json::array();
  for (double x : v) j.push_back(tagged_float(x));
  return j;
}

std::string exact_text(const BigRational& q) { return is_integer(q) ? to_decimal(q.get_num()) : to_fraction_string(q); }

std::string tuple_text(const CountTuple& x) {
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) out += (i ? " " : "") + std::to_string(x[i]);
  return out;
}

Json tuple_json(const CountTuple& x) {
  Json j = Json::array();
  for (long v : x) j.push_back(std::to_string(v));
  return j;
}

Json member_names(const GraphFamily& fam) {
  Json j = Json::array();
  for (const SmallGraph& h : fam.members) j.push_back(h.name());
  return j;
}

Json context_json(const std::string& command, const ProblemContext& ctx, const GraphFamily* fam) {
  Json j = Json::object();
  j["command"] = command;
  if (fam) j["family"] = member_names(*fam);
  j["n"] = std::to_string(ctx.n);
  j["p"] = ctx.p_string();
  return j;
}

Outcome cmd_stats(const Config& cfg, const std::string& graph6) {
  const HostGraph g = graph6_parse(graph6);
  const BigRational p = p_value(cfg);
  const GraphFamily fam = family(cfg.family);
  const ProblemContext ctx(g.n(), p);
  Outcome o;
  Json& body = o.report.body;
  body = context_json("stats", ctx, &fam);
  body["graph6"] = graph6;
  body["edges"] = std::to_string(g.edge_count());
  Json members = Json::array();
  o.report.columns = {"H", "X", "g", "gamma"};
  for (const SmallGraph& h : fam.members) {
    const BigInt x = count_subgraph_copies(h, g);
    const BigRational gv = h.vertex_count() <= g.n() ? scaled_factor_value(h, g, ctx) : BigRational(0);
    const double gamma = gamma_value(h, gv, ctx);
    Json m = Json::object();
    m["H"] = h.name();
    m["X"] = to_decimal(x);
    m["g"] = exact_text(gv);
    m["gamma"] = tagged_float(gamma);
    members.push_back(m);
    o.report.rows.push_back({h.name(), to_decimal(x), exact_text(gv), float_text(gamma)});
  }
  body["members"] = members;
  body["hat_proportional"] = is_hat_proportional(g, p, fam);
  return o;
}

Outcome cmd_check(const Config& cfg, const std::string& kind) {
  const BigRational p = p_value(cfg);
  if (cfg.n.empty()) throw UsageError("--n is required");
  const BigInt n = parse_bigint(cfg.n);
  const BigInt a = p.get_num(), b = p.get_den();
  Outcome o;
  Json& body = o.report.body;
  body["command"] = "check";
  body["kind"] = kind;
  bool verdict = false;
  if (kind == "pc" || kind == "spc") {
    const CompatVerdict v = kind == "pc" ? is_pc(n, a, b) : is_spc(n, a, b);
    verdict = v.verdict;
    auto opt = [](const std::optional<bool>& x) { return x ? Json(*x) : Json(nullptr); };
    body["n"] = to_decimal(n);
    body["p"] = to_fraction_string(p);
    body["verdict"] = v.verdict;
    body["characterization"] = opt(v.characterization);
    body["oracle"] = opt(v.oracle);
    body["detail"] = v.detail;
    auto cell = [](const std::optional<bool>& x) -> std::string { return x ? (*x ? "true" : "false") : ""; };
    o.report.columns = {"kind", "n", "p", "verdict", "characterization", "oracle", "detail"};
    o.report.rows.push_back({kind, to_decimal(n), to_fraction_string(p), v.verdict ? "true" : "false",
                             cell(v.characterization), cell(v.oracle), v.detail});
  } else {
    const HpcWitness w = is_hpc(n, a, b, kind == "hpc+" ? HpcSign::Plus : HpcSign::Minus);
    verdict = w.verdict;
    const Json wj = witness_json(w);
    for (const auto& [key, value] : wj.items()) body[key] = value;
    body["reason"] = w.reason;
    o.report.columns = witness_csv_columns();
    o.report.columns.insert(o.report.columns.begin(), "kind");
    o.report.columns.push_back("reason");
    std::vector<std::string> row = witness_csv_row(w);
    row.insert(row.begin(), kind);
    row.push_back(w.reason);
    o.report.rows.push_back(row);
  }
  o.code = verdict ? kExitOk : kExitFalse;
  return o;
}

Outcome cmd_find_hpc(const Config& cfg, const std::string& sign_text, const std::string& scan_max, bool pell,
                     bool congruence, long max_digits, long count) {
  const BigRational p = p_value(cfg);
  const HpcSign sign = parse_sign(sign_text);
  HpcScanOptions opts;
  opts.workers = cfg.workers;
  opts.max_digits = max_digits;
  opts.count = count;
  const int modes = (!scan_max.empty()) + pell + congruence;
  if (modes != 1) throw UsageError("give exactly one of --scan-max, --pell, --congruence");
  std::string mode;
  if (!scan_max.empty()) {
    opts.mode = HpcScanMode::Brute;
    opts.n_max = parse_bigint(scan_max);
    mode = "brute";
  } else if (pell) {
    opts.mode = HpcScanMode::Pell;
    mode = "pell";
  } else {
    opts.mode = HpcScanMode::Congruence;
    mode = "congruence";
  }
  const HpcScanResult res = hpc_scan(p.get_num(), p.get_den(), sign, opts);
  Outcome o;
  Json& body = o.report.body;
  body["command"] = "find-hpc";
  body["p"] = to_fraction_string(p);
  body["sign"] = std::string(1, sign_char(sign));
  body["mode"] = mode;
  if (opts.mode == HpcScanMode::Brute)
    body["scan_max"] = to_decimal(opts.n_max);
  else
    body["max_digits"] = std::to_string(opts.max_digits);
  body["tested"] = std::to_string(res.tested);
  body["note"] = res.note;
  Json list = Json::array();
  o.report.columns = witness_csv_columns();
  for (const HpcWitness& w : res.accepted) {
    list.push_back(witness_json(w));
    o.report.rows.push_back(witness_csv_row(w));
  }
  body["witnesses"] = list;
  return o;
}

Outcome cmd_smallest() {
  const BigInt n = smallest_hpc_half();
  const std::string text = to_decimal(n);
  const bool matches = text == smallest_hpc_half_reference();
  Outcome o;
  Json& body = o.report.body;
  body["command"] = "smallest-hpc-half";
  body["n"] = text;
  body["digits"] = std::to_string(text.size());
  body["matches_reference"] = matches;
  body["checksum"] = fnv1a_hex(text);
  o.report.columns = {"n", "digits", "matches_reference", "checksum"};
  o.report.rows.push_back({text, std::to_string(text.size()), matches ? "true" : "false", fnv1a_hex(text)});
  o.plain = text + "\n";
  o.code = matches ? kExitOk : kExitFalse;
  return o;
}

Outcome cmd_ifs(const Config& cfg, long samples) {
  const GraphFamily fam = family(cfg.family);
  const ProblemContext ctx(small_n(cfg, 2, 1'000'000), p_value(cfg));
  const IfsSystem ifs = ifs_construct(fam, ctx);
  const IfsReport rep = ifs_verify(ifs, samples, cfg.seed, cfg.workers);
  Outcome o;
  Json& body = o.report.body;
  body = context_json("ifs", ctx, &fam);
  body["eta"] = tagged_float(ifs.eta);
  body["eta_b"] = tagged_float(ifs.eta_b);
  body["eta_c"] = tagged_float(ifs.eta_c);
  o.report.columns = {"H", "basis", "term", "coefficient"};
  Json entries = Json::array();
  for (const IfsEntry& e : ifs.entries) {
    Json j = Json::object();
    j["H"] = e.h.name();
    j["iterations"] = std::to_string(e.iterations);
    Json a = Json::object(), c = Json::object();
    for (const auto& [hp, coeff] : e.a) {
      a[hp.name()] = to_decimal(coeff);
      o.report.rows.push_back({e.h.name(), "x_star", hp.name(), to_decimal(coeff)});
    }
    for (const auto& [hp, coeff] : e.c.terms()) {
      c[hp.name()] = exact_text(coeff);
      o.report.rows.push_back({e.h.name(), "g", hp.name(), exact_text(coeff)});
    }
    j["x_star"] = a;
    j["g"] = c;
    entries.push_back(j);
  }
  body["entries"] = entries;
  Json v = Json::object();
  v["samples"] = std::to_string(rep.samples);
  v["seed"] = std::to_string(cfg.seed);
  v["integrality_violations"] = std::to_string(rep.integrality_violations);
  v["condition_violations"] = std::to_string(rep.condition_violations);
  v["messages"] = rep.messages;
  v["passed"] = rep.passed();
  body["verification"] = v;
  o.code = rep.passed() ? kExitOk : kExitFalse;
  return o;
}

Outcome cmd_permissible(const Config& cfg, const std::string& y_text, const std::string& x_text,
                        const std::string& g_text, double tolerance) {
  const GraphFamily fam = family(cfg.family);
  const ProblemContext ctx(small_n(cfg, 2, 1'000'000), p_value(cfg));
  const int given = !y_text.empty() + !x_text.empty() + !g_text.empty();
  if (given != 1) throw UsageError("give exactly one of --y, --x, --g");
  FactorMap map(fam, ctx);
  auto check_size = [&](std::size_t k) {
    if (k != fam.size())
      throw UsageError("expected " + std::to_string(fam.size()) + " values, got " + std::to_string(k));
  };
  Outcome o;
  Json& body = o.report.body;
  body = context_json("permissible", ctx, &fam);
  bool permissible = false;
  std::vector<BigRational> x, g;
  std::vector<double> y;
  if (!y_text.empty()) {
    y = parse_doubles(y_text);
    check_size(y.size());
    const SnapResult snap = snap_to_lattice(map, y, tolerance);
    permissible = snap.permissible;
    x = snap.x;
    g = snap.g;
    body["input"] = "y";
    body["tolerance"] = tagged_float(tolerance);
    body["max_deviation"] = tagged_float(snap.max_deviation);
  } else if (!x_text.empty()) {
    x = parse_rationals(x_text);
    check_size(x.size());
    g = map.g_from_x(x);
    y = map.y_from_g(g);
    permissible = std::all_of(x.begin(), x.end(), [](const BigRational& q) { return is_integer(q); });
    body["input"] = "x";
  } else {
    g = parse_rationals(g_text);
    check_size(g.size());
    x = map.x_from_g(g);
    y = map.y_from_g(g);
    permissible = is_permissible(map, g);
    body["input"] = "g";
  }
  body["permissible"] = permissible;
  body["x"] = string_array(x);
  body["g"] = string_array(g);
  body["y"] = float_array(y);
  o.report.columns = {"H", "x", "g", "y"};
  for (std::size_t i = 0; i < fam.size(); ++i)
    o.report.rows.push_back({fam.members[i].name(), i < x.size() ? exact_text(x[i]) : "",
                             i < g.size() ? exact_text(g[i]) : "", i < y.size() ? float_text(y[i]) : ""});
  o.code = permissible ? kExitOk : kExitFalse;
  return o;
}

Json point_json(const LltPoint& pt) {
  Json j = Json::object();
  j["x"] = tuple_json(pt.x);
  j["y"] = float_array(pt.y);
  if (pt.exact) j["probability"] = to_fraction_string(*pt.exact);
  if (pt.estimate) {
    j["estimate"] = tagged_float(*pt.estimate);
    j["stderr"] = tagged_float(pt.stderr_value);
  }
  j["predicted"] = tagged_float(pt.predicted);
  j["scaled_error"] = tagged_float(pt.scaled_error);
  if (pt.estimate) j["scaled_stderr"] = tagged_float(pt.scaled_stderr);
  return j;
}

std::vector<std::string> point_row(const LltPoint& pt, bool is_mode) {
  return {tuple_text(pt.x),
          pt.exact ? to_fraction_string(*pt.exact) : "",
          pt.estimate ? float_text(*pt.estimate) : "",
          pt.estimate ? float_text(pt.stderr_value) : "",
          float_text(pt.predicted),
          float_text(pt.scaled_error),
          is_mode ? "true" : "false"};
}

Outcome llt_outcome(const std::string& command, const LltReport& rep, Json extra) {
  Outcome o;
  Json& body = o.report.body;
  body = context_json(command, rep.ctx, &rep.family);
  for (const auto& [key, value] : extra.items()) body[key] = value;
  Json sigma = Json::array();
  for (const SigmaEntry& s : rep.sigma) {
    Json j = Json::object();
    j["H"] = s.h.name();
    j["sigma2"] = to_decimal(s.sigma2);
    j["sigma"] = tagged_float(s.sigma);
    sigma.push_back(j);
  }
  body["sigma"] = sigma;
  body["mode"] = point_json(rep.mode());
  body["max_scaled_error"] = tagged_float(rep.max_scaled_error);
  Json points = Json::array();
  o.report.columns = {"x", "probability", "estimate", "stderr", "predicted", "scaled_error", "mode"};
  for (std::size_t i = 0; i < rep.entries.size(); ++i) {
    points.push_back(point_json(rep.entries[i]));
    o.report.rows.push_back(point_row(rep.entries[i], i == rep.mode_index));
  }
  body["points"] = points;
  return o;
}

Outcome cmd_llt_exhaustive(const Config& cfg) {
  const GraphFamily fam = family(cfg.family);
  const ProblemContext ctx(small_n(cfg, 2, 8), p_value(cfg));
  const JointDistribution dist = exact_joint_distribution(fam, ctx, cfg.workers);
  return llt_outcome("llt-exhaustive", llt_error_report(dist), Json::object());
}

Outcome cmd_llt_mc(const Config& cfg, long samples, long radius) {
  const GraphFamily fam = family(cfg.family);
  const ProblemContext ctx(small_n(cfg, 2, 100'000), p_value(cfg));
  if (samples < 1) throw UsageError("--samples must be positive");
  const CountTuple mode = llt_mode(FactorMap(fam, ctx));
  const McEstimate est = mc_joint_estimate(fam, ctx, samples, cfg.seed, cfg.workers, mode, radius);
  Json extra = Json::object();
  extra["samples"] = std::to_string(samples);
  extra["seed"] = std::to_string(cfg.seed);
  extra["radius"] = std::to_string(radius);
  return llt_outcome("llt-mc", llt_error_report(est, radius), extra);
}

Json complex_json(std::complex<double> z) {
  Json j = Json::object();
  j["re"] = tagged_float(z.real());
  j["im"] = tagged_float(z.imag());
  return j;
}

Outcome cmd_char_fn(const Config& cfg, const std::string& t_text, long samples) {
  const GraphFamily fam = family(cfg.family);
  const ProblemContext ctx(small_n(cfg, 2, 100'000), p_value(cfg));
  const std::vector<double> t = parse_doubles(t_text);
  if (t.size() != fam.size())
    throw UsageError("--t needs " + std::to_string(fam.size()) + " values, got " + std::to_string(t.size()));
  const IfsSystem ifs = ifs_construct(fam, ctx);
  const CharPoint pt = char_fn_compare(ifs, t, samples, cfg.seed, cfg.workers);
  Outcome o;
  Json& body = o.report.body;
  body = context_json("char-fn", ctx, &fam);
  body["samples"] = std::to_string(samples);
  body["seed"] = std::to_string(cfg.seed);
  body["t"] = float_array(t);
  body["phi_x"] = complex_json(pt.phi_x);
  body["phi_z"] = complex_json(pt.phi_z);
  body["stderr_x"] = tagged_float(pt.stderr_x);
  body["stderr_z"] = tagged_float(pt.stderr_z);
  body["difference"] = tagged_float(pt.difference);
  body["combined_stderr"] = tagged_float(pt.combined_stderr);
  o.report.columns = {"phi_x_re", "phi_x_im", "phi_z_re", "phi_z_im", "difference", "combined_stderr"};
  o.report.rows.push_back({float_text(pt.phi_x.real()), float_text(pt.phi_x.imag()), float_text(pt.phi_z.real()),
                           float_text(pt.phi_z.imag()), float_text(pt.difference), float_text(pt.combined_stderr)});
  return o;
}

Outcome cmd_search(const Config& cfg, const std::string& mode, long budget, long want, bool count_only) {
  const GraphFamily fam = family(cfg.family);
  const ProblemContext ctx(small_n(cfg, 2, 64), p_value(cfg));
  SearchOptions opts;
  opts.mode = mode == "anneal" ? SearchMode::Anneal : SearchMode::Exhaustive;
  opts.seed = cfg.seed;
  opts.workers = cfg.workers;
  opts.budget = budget;
  opts.want = want;
  opts.collect = !count_only;
  SearchResult res;
  try {
    res = search_proportional(ctx, fam, opts);
  } catch (const NoSolutionError& e) {
    res.note = e.what();
  }
  Outcome o;
  Json& body = o.report.body;
  body = context_json("search-proportional", ctx, &fam);
  body["mode"] = mode;
  if (opts.mode == SearchMode::Anneal) body["seed"] = std::to_string(cfg.seed);
  body["count"] = std::to_string(res.count);
  body["verified"] = std::to_string(res.verified);
  body["note"] = res.note;
  try {
    const CountPrediction pred = predicted_count_proportional(fam, ctx);
    Json j = Json::object();
    j["probability"] = tagged_float(pred.probability);
    j["log10_probability"] = tagged_float(pred.log10_probability);
    j["count"] = pred.count ? tagged_float(*pred.count) : Json(nullptr);
    j["edges"] = pred.edges ? Json(to_decimal(*pred.edges)) : Json(nullptr);
    body["prediction"] = j;
  } catch (const NotPermissibleError& e) {
    body["prediction"] = nullptr;
  }
  body["graphs"] = res.graphs;
  o.report.columns = {"graph6"};
  for (const std::string& g : res.graphs) o.report.rows.push_back({g});
  return o;
}

Outcome cmd_identities(const Config& cfg, int max_vertices, const std::string& p_list) {
  std::vector<BigRational> ps;
  for (const std::string& s : split(p_list)) ps.push_back(parse_rational(normalize_p(s)));
  const IdentitySuiteReport rep = run_identity_suite(max_vertices, ps, cfg.workers);
  Outcome o;
  Json& body = o.report.body;
  body["command"] = "verify-identities";
  body["max_vertices"] = std::to_string(max_vertices);
  body["checks"] = std::to_string(rep.checks());
  body["failures"] = std::to_string(rep.failures());
  body["passed"] = rep.passed();
  Json rows = Json::array();
  o.report.columns = {"identity", "n", "p", "instances", "hosts", "checks", "failures", "witness"};
  for (const IdentityRow& r : rep.rows) {
    Json j = Json::object();
    j["identity"] = r.identity;
    j["n"] = std::to_string(r.n);
    j["p"] = to_fraction_string(r.p);
    j["instances"] = std::to_string(r.instances);
    j["hosts"] = std::to_string(r.hosts);
    j["checks"] = std::to_string(r.checks);
    j["failures"] = std::to_string(r.failures);
    j["witness"] = r.witness.empty() ? Json(nullptr) : Json(r.witness);
    rows.push_back(j);
    o.report.rows.push_back({r.identity, std::to_string(r.n), to_fraction_string(r.p), std::to_string(r.instances),
                             std::to_string(r.hosts), std::to_string(r.checks), std::to_string(r.failures),
                             r.witness});
  }
  body["rows"] = rows;
  o.code = rep.passed() ? kExitOk : kExitFalse;
  return o;
}

std::string version_text() {
  return "sgf 1.0.0\nsmallest-hpc-half fnv1a64 " + fnv1a_hex(smallest_hpc_half_reference()) + "\n";
}

}  // namespace

std::string normalize_p(const std::string& text) {
  static const std::regex form("([0-9]+)/([0-9]+)");
  std::smatch m;
  if (!std::regex_match(text, m, form)) throw UsageError("p must be written a/b, got '" + text + "'");
  const BigInt num(m[1].str()), den(m[2].str());
  if (den == 0) throw UsageError("p has a zero denominator");
  BigRational p(num, den);
  p.canonicalize();
  if (p <= 0 || p >= 1) throw UsageError("p must lie strictly between 0 and 1, got " + text);
  return to_fraction_string(p);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Subgraph counts, graph factors and proportional-graph arithmetic", "sgf"};
  app.require_subcommand(0, 1);
  app.fallthrough();
  Config cfg;
  cfg.workers = default_workers();
  bool version = false;
  app.add_flag("--version", version, "Print the version and the reference-constant checksum");
  auto* format_opt =
      app.add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output", cfg.output, "Write the report to this file");
  app.add_option("--workers", cfg.workers, "Worker threads (default: SGF_WORKERS or all cores)")
      ->check(CLI::Range(1, 1024));
  app.add_option("--seed", cfg.seed, "Seed for sampling commands");

  auto add_p = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--p", cfg.p, "Edge probability a/b");
    if (required) opt->required();
  };
  auto add_n = [&](CLI::App* sub) { sub->add_option("--n", cfg.n, "Vertex count")->required(); };
  auto add_family = [&](CLI::App* sub) { sub->add_option("--family", cfg.family, "Family selector, e.g. C2,C3"); };

  std::string graph6;
  auto* stats = app.add_subcommand("stats", "Counts and scaled factors of a graph");
  stats->add_option("graph6", graph6, "Host graph in graph6")->required();
  add_p(stats, true);
  add_family(stats);

  std::string kind;
  auto* check = app.add_subcommand("check", "Decide PC, SPC or HPC for one n");
  check->add_option("--kind", kind, "pc, spc, hpc+ or hpc-")->required()->check(
      CLI::IsMember({"pc", "spc", "hpc+", "hpc-"}));
  add_p(check, true);
  add_n(check);

  std::string sign, scan_max;
  bool pell = false, congruence = false;
  long max_digits = 400, count = 3;
  auto* find = app.add_subcommand("find-hpc", "Scan for HPC numbers");
  add_p(find, true);
  find->add_option("--sign", sign, "+ or -")->required()->check(CLI::IsMember({"+", "-"}));
  find->add_option("--scan-max", scan_max, "Test every 5 <= n <= N");
  find->add_flag("--pell", pell, "Walk the Pell classes with square discriminant");
  find->add_flag("--congruence", congruence, "Generate witnesses from the unit-group congruence");
  find->add_option("--max-digits", max_digits, "Largest n considered, in decimal digits")->check(CLI::Range(1L, 100000L));
  find->add_option("--count", count, "Congruence witnesses to generate")->check(CLI::Range(1L, 1000L));

  auto* smallest = app.add_subcommand("smallest-hpc-half", "Print the smallest (1/2)-HPC number");

  long samples = 1000;
  auto* ifs = app.add_subcommand("ifs", "Construct and verify an integral factor system");
  add_family(ifs);
  add_n(ifs);
  add_p(ifs, true);
  ifs->add_option("--samples", samples, "Verification samples")->check(CLI::Range(0L, 1'000'000'000L));

  std::string y_text, x_text, g_text;
  double tolerance = 1e-6;
  auto* perm = app.add_subcommand("permissible", "Map a tuple to subgraph counts and test integrality");
  add_family(perm);
  add_n(perm);
  add_p(perm, true);
  perm->add_option("--y", y_text, "Comma-separated gamma values (snapped to the lattice)");
  perm->add_option("--x", x_text, "Comma-separated subgraph counts");
  perm->add_option("--g", g_text, "Comma-separated exact scaled factors");
  perm->add_option("--tolerance", tolerance, "Snap tolerance for --y");

  auto* llt_ex = app.add_subcommand("llt-exhaustive", "Exact joint law against the local limit prediction");
  add_family(llt_ex);
  add_n(llt_ex);
  add_p(llt_ex, true);

  long mc_samples = 1'000'000, radius = 3;
  auto* llt_mc = app.add_subcommand("llt-mc", "Monte Carlo joint law against the local limit prediction");
  add_family(llt_mc);
  add_n(llt_mc);
  add_p(llt_mc, true);
  llt_mc->add_option("--samples", mc_samples, "Samples");
  llt_mc->add_option("--radius", radius, "Report tuples within this sup-distance of the mode (-1: all)");

  std::string t_text;
  long cf_samples = 100'000;
  auto* charfn = app.add_subcommand("char-fn", "Characteristic functions of the IFS statistics vs the Gaussian model");
  add_family(charfn);
  add_n(charfn);
  add_p(charfn, true);
  charfn->add_option("--t", t_text, "Comma-separated frequencies, one per member")->required();
  charfn->add_option("--samples", cf_samples, "Samples")->check(CLI::Range(1L, 1'000'000'000L));

  std::string search_mode = "exhaustive";
  long budget = 2'000'000, want = 1;
  bool count_only = false;
  auto* search = app.add_subcommand("search-proportional", "Find proportional graphs");
  search->add_option("--mode", search_mode, "exhaustive or anneal")->check(CLI::IsMember({"exhaustive", "anneal"}));
  add_family(search);
  add_n(search);
  add_p(search, true);
  search->add_option("--budget", budget, "Anneal proposals");
  search->add_option("--want", want, "Anneal: distinct graphs to find");
  search->add_flag("--count-only", count_only, "Exhaustive: report the count without the graphs");

  int max_vertices = 6;
  std::string p_list = "1/2,1/3,2/5";
  auto* ident = app.add_subcommand("verify-identities", "Check the algebra identities on small hosts");
  ident->add_option("--max-vertices", max_vertices, "Largest host size")->check(CLI::Range(2, 7));
  ident->add_option("--p", p_list, "Comma-separated list of a/b values");

  std::vector<std::string> argv_store{"sgf"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "sgf: " << e.what() << "\n";
    return kExitError;
  }

  if (version) {
    out << version_text();
    return kExitOk;
  }
  if (app.get_subcommands().empty()) {
    err << "sgf: no command given (see --help)\n";
    return kExitError;
  }

  try {
    const ReportFormat format = parse_format(cfg.format);
    Outcome o;
    if (stats->parsed()) o = cmd_stats(cfg, graph6);
    else if (check->parsed()) o = cmd_check(cfg, kind);
    else if (find->parsed()) o = cmd_find_hpc(cfg, sign, scan_max, pell, congruence, max_digits, count);
    else if (smallest->parsed()) o = cmd_smallest();
    else if (ifs->parsed()) o = cmd_ifs(cfg, samples);
    else if (perm->parsed()) o = cmd_permissible(cfg, y_text, x_text, g_text, tolerance);
    else if (llt_ex->parsed()) o = cmd_llt_exhaustive(cfg);
    else if (llt_mc->parsed()) o = cmd_llt_mc(cfg, mc_samples, radius);
    else if (charfn->parsed()) o = cmd_char_fn(cfg, t_text, cf_samples);
    else if (search->parsed()) o = cmd_search(cfg, search_mode, budget, want, count_only);
    else o = cmd_identities(cfg, max_vertices, p_list);

    const std::string text = o.plain && format_opt->count() == 0 ? *o.plain : o.report.render(format);
    if (cfg.output.empty()) {
      out << text;
    } else {
      std::ofstream file(cfg.output, std::ios::binary);
      if (!file) throw std::runtime_error("cannot open " + cfg.output + " for writing");
      file << text;
      if (!file) throw std::runtime_error("failed writing " + cfg.output);
    }
    return o.code;
  } catch (const std::exception& e) {
    err << "sgf: error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace sgf::cli
