#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "json_io.hpp"

namespace collider::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 1;
  std::string format;  // empty: command default
  std::string output;
};

unsigned default_threads() {
  if (const char* env = std::getenv("COLLIDER_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("COLLIDER_THREADS must be a positive integer (got '") + env + "')");
  }
  return 1;
}

/// Decimal, 0x-hex, or a power written as "b^e".
BigNat parse_big(const std::string& text) {
  const auto caret = text.find('^');
  if (caret == std::string::npos) return BigNat::parse(text);
  const BigNat base = BigNat::parse(text.substr(0, caret));
  const BigNat exp = BigNat::parse(text.substr(caret + 1));
  return BigNat::pow(base.to_u64(), exp.to_u64());
}

std::uint64_t parse_u64(const std::string& text) { return parse_big(text).to_u64(); }

std::vector<std::uint64_t> parse_u64_list(const std::vector<std::string>& items) {
  std::vector<std::uint64_t> out;
  for (const auto& s : items) out.push_back(parse_u64(s));
  return out;
}

// Output sink honoring --output.
class Output {
 public:
  Output(const RunConfig& cfg, std::ostream& fallback) : cfg_(cfg), stream_(&fallback) {
    if (!cfg.output.empty()) {
      file_.open(cfg.output);
      if (!file_) throw InvalidArgument("cannot open output file " + cfg.output);
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }

  void json(const Json& j) {
    const std::string& f = cfg_.format;
    if (f.empty() || f == "jsonl") {
      *stream_ << j.dump() << '\n';
    } else if (f == "pretty") {
      *stream_ << j.dump(2) << '\n';
    } else {
      throw UsageError("--format " + f + " is not supported by this subcommand");
    }
  }

  bool csv() const { return cfg_.format == "csv"; }
  bool bfile() const { return cfg_.format == "bfile"; }

 private:
  const RunConfig& cfg_;
  std::ostream* stream_;
  std::ofstream file_;
};

// ---------------------------------------------------------------------------
// Family / progression options shared by construct, forge and analyze.

struct FamilyArgs {
  std::optional<std::uint64_t> eta;
  std::optional<std::uint64_t> m;
  std::optional<std::int64_t> J;
  std::string n_text;
  std::optional<std::uint64_t> bits;
  std::optional<double> log_n;
  double epsilon = kDefaultEpsilon;
  std::string strategy = "automatic";
  std::optional<std::int64_t> bound;
  std::optional<std::uint64_t> zeta;
  std::string params_path;
};

void add_family_options(CLI::App* sub, FamilyArgs& a) {
  sub->add_option("--eta", a.eta, "block length eta (multiple of 4)");
  sub->add_option("--m", a.m, "difference step m");
  sub->add_option("--J", a.J, "shift range J");
  sub->add_option("--N", a.n_text, "target size N (decimal, 0x-hex or b^e)");
  sub->add_option("--bits", a.bits, "shorthand for N = 2^bits");
  sub->add_option("--log-n", a.log_n, "natural log of N (asymptotic parameter scheme)");
  sub->add_option("--epsilon", a.epsilon, "epsilon of the asymptotic parameter scheme")->check(CLI::PositiveNumber);
  sub->add_option("--strategy", a.strategy, "anchor strategy")
      ->check(CLI::IsMember({"automatic", "uniform", "steered"}));
  sub->add_option("--bound", a.bound, "deviation bound for uniform anchors");
  sub->add_option("--zeta", a.zeta, "override the rarefaction exponent zeta");
  sub->add_option("--params", a.params_path, "JSON from `construct` or `forge` ('-' for stdin)");
}

std::optional<BigNat> target_n(const FamilyArgs& a) {
  if (!a.n_text.empty()) return parse_big(a.n_text);
  if (a.bits) return BigNat::pow2(*a.bits);
  if (a.log_n) {
    // e^x rounded to 53 significant bits.
    const double log2n = *a.log_n / std::log(2.0);
    if (log2n < 53.0) return BigNat(static_cast<std::uint64_t>(std::floor(std::exp(*a.log_n))));
    const double whole = std::floor(log2n);
    const auto mant = static_cast<std::uint64_t>(std::ldexp(std::exp2(log2n - whole), 52));
    return BigNat(mant) << static_cast<std::size_t>(whole - 52.0);
  }
  return std::nullopt;
}

AnchorStrategy strategy_of(const std::string& s) {
  if (s == "uniform") return AnchorStrategy::uniform;
  if (s == "steered") return AnchorStrategy::steered;
  return AnchorStrategy::automatic;
}

struct Built {
  ShiftFamily family;
  std::optional<BigNat> N;
  std::optional<std::uint64_t> zeta;
};

Json read_json_source(const std::string& path) {
  try {
    if (path == "-") return Json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path);
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument(std::string("malformed JSON in ") + path + ": " + e.what());
  }
}

Built build_family(const FamilyArgs& a, const RunConfig& cfg) {
  Built b;
  b.N = target_n(a);
  b.zeta = a.zeta;
  if (!a.params_path.empty()) {
    const Json doc = read_json_source(a.params_path);
    if (!doc.contains("params") || !doc.contains("family")) {
      throw InvalidArgument("--params JSON needs \"params\" and \"family\" objects");
    }
    b.family = family_from_json(doc.at("params"), doc.at("family"));
    if (doc.contains("progression") && doc.at("progression").is_object()) {
      const Json& p = doc.at("progression");
      if (!b.N) b.N = bignat_field(p, "N");
      if (!b.zeta && p.contains("zeta")) b.zeta = p.at("zeta").get<std::uint64_t>();
    }
    return b;
  }

  Params params;
  const bool manual = a.eta || a.m || a.J;
  if (manual) {
    if (!a.eta || !a.m || !a.J) throw UsageError("manual parameters need all of --eta, --m and --J");
    params = make_params(ManualParams{*a.eta, *a.m, *a.J});
  } else if (a.log_n) {
    params = make_params_from_log(*a.log_n, a.epsilon);
  } else if (b.N) {
    params = make_params(*b.N, a.epsilon);
  } else {
    throw UsageError("give --eta/--m/--J, --N/--bits/--log-n, or --params");
  }
  FamilyOptions opts;
  opts.seed = cfg.seed;
  opts.strategy = strategy_of(a.strategy);
  opts.bound = a.bound;
  b.family = construct_family(params, opts);
  return b;
}

ProgressionSpec build_progression(const Built& b) {
  if (!b.N) throw UsageError("this subcommand needs a target size: --N, --bits, --log-n or a --params progression");
  return make_progression(b.family, *b.N, b.zeta);
}

// ---------------------------------------------------------------------------

struct Commands {
  RunConfig cfg;

  // digits
  std::string digits_n;
  int digits_base = 2;
  bool digits_blocks = false;
  bool digits_valuation = false;

  // dist
  std::string dist_t = "1";
  std::uint64_t dist_L = 0;
  std::string dist_mode = "recurrence";
  double dist_theta = 0.0;
  std::optional<std::uint64_t> bounds_nu;
  std::optional<std::string> bounds_t;

  // construct / forge / analyze
  FamilyArgs fam;
  std::uint64_t verify_samples = 100;
  std::uint64_t budget = ForgeOptions{}.budget;
  std::uint64_t samples = 0;
  std::int64_t zeta_offset = 0;
  std::optional<std::uint64_t> share_modulus;

  // enum / patterns / count / compare-bfile
  std::string limit = "37";
  bool almost = false;
  unsigned window = 1;
  std::vector<unsigned> offsets;
  std::vector<std::string> checkpoints;
  std::string bfile_path;

  // analyze orthogonality / hoeffding / gelfond / fit
  std::string orth_L = "0";
  std::string orth_mod2 = "1";
  std::string orth_mod3 = "1";
  std::uint64_t orth_k_lo = 0;
  std::uint64_t orth_k_hi = 1000;
  std::uint64_t orth_m = 3;
  std::int64_t orth_t = 0;
  unsigned hoeff_T = 20;
  double hoeff_t = 5.0;
  std::string gelfond_n = "1000000";
  std::uint64_t gelfond_m1 = 2;
  std::uint64_t gelfond_m2 = 3;
  std::vector<std::string> fit_points;
};

void run_digits(Commands& c, Output& out) {
  const BigNat n = parse_big(c.digits_n);
  Json j;
  j["n"] = n.to_string();
  j["base"] = c.digits_base;
  j["digits"] = digits_of(n, c.digits_base).to_text();
  j["digit_sum"] = digit_sum(n, c.digits_base);
  if (c.digits_blocks) {
    const BlockCounts bc = count_blocks(n);
    j["one_blocks"] = bc.one_blocks;
    j["base4_ones"] = bc.base4_ones;
  }
  if (c.digits_valuation) {
    const ValuationCheck v = binomial_valuation_check(n);
    j["v2"] = v.v2;
    j["v3_twice"] = v.v3_twice;
    j["identities_hold"] = v.identities_hold;
  }
  out.json(j);
}

void run_phi(Commands& c, Output& out) {
  const PhiMode mode = c.dist_mode == "bruteforce" ? PhiMode::bruteforce : PhiMode::recurrence;
  const DistTable table = phi_table(parse_big(c.dist_t), c.dist_L, mode);
  if (out.csv()) {
    out.stream() << "j,count\n";
    for (const auto& [j, cnt] : table.counts) out.stream() << j << ',' << cnt << '\n';
    return;
  }
  out.json(to_json(table));
}

void run_omega(Commands& c, Output& out) {
  const OmegaMode mode = c.dist_mode == "direct" ? OmegaMode::direct : OmegaMode::recurrence;
  const BigNat t = parse_big(c.dist_t);
  const auto w = omega(t, c.dist_theta, c.dist_L, mode);
  out.json({{"t", t.to_string()},
            {"theta", c.dist_theta},
            {"L", c.dist_L},
            {"re", w.real()},
            {"im", w.imag()},
            {"abs", std::abs(w)}});
}

void run_moments(Commands& c, Output& out) {
  const BigNat t = parse_big(c.dist_t);
  const MomentPair mp = moments(t, c.dist_L);
  out.json({{"t", t.to_string()},
            {"L", c.dist_L},
            {"m1", rational_text(mp.m1)},
            {"m2", rational_text(mp.m2)},
            {"m2_value", mp.m2.get_d()}});
}

void run_bounds(Commands& c, Output& out) {
  if (!c.bounds_nu && !c.bounds_t) throw UsageError("dist bounds needs --nu and/or --t with --theta and --L");
  Json j;
  if (c.bounds_nu) {
    const M2BoundReport r = check_m2_bound(*c.bounds_nu);
    j["m2_bound"] = {{"nu", *c.bounds_nu},
                     {"max_m2", rational_text(r.max_m2)},
                     {"witness_t", r.witness_t},
                     {"limit", 2 * *c.bounds_nu},
                     {"holds", r.holds}};
  }
  if (c.bounds_t) {
    const BigNat t = parse_big(*c.bounds_t);
    const OmegaBoundReport r = check_omega_block_bound(t, c.dist_theta, c.dist_L);
    j["omega_bound"] = {{"t", t.to_string()}, {"theta", c.dist_theta}, {"L", c.dist_L}, {"lhs", r.lhs},
                        {"rhs", r.rhs},       {"blocks", r.blocks},     {"holds", r.holds}};
  }
  out.json(j);
}

void run_construct(Commands& c, Output& out) {
  const Built b = build_family(c.fam, c.cfg);
  Json j;
  j["params"] = to_json(b.family.params);
  j["family"] = to_json(b.family);
  if (c.verify_samples > 0) {
    const DifferenceReport r = verify_difference_property(b.family, c.verify_samples, c.cfg.seed);
    Json v{{"samples", c.verify_samples}, {"checked", r.checked}, {"passed", r.passed}};
    if (r.counterexample) {
      v["counterexample"] = {{"k", r.counterexample->k.to_string()},
                             {"j", r.counterexample->j},
                             {"expected", r.counterexample->expected},
                             {"actual", r.counterexample->actual}};
    }
    j["verification"] = std::move(v);
  }
  if (b.N) {
    try {
      j["progression"] = to_json(make_progression(b.family, *b.N, b.zeta));
    } catch (const EmptyInterval& e) {
      j["progression"] = nullptr;
      j["progression_error"] = e.what();
    }
  }
  out.json(j);
}

void run_forge(Commands& c, Output& out) {
  const Built b = build_family(c.fam, c.cfg);
  const ProgressionSpec spec = build_progression(b);
  ForgeOptions opts;
  opts.budget = c.budget;
  opts.seed = c.cfg.seed;
  opts.threads = c.cfg.threads;
  out.json(to_json(forge_collision(spec, opts)));
}

ProgressionSpec analysis_progression(Commands& c) {
  const Built b = build_family(c.fam, c.cfg);
  ProgressionSpec spec = build_progression(b);
  if (c.zeta_offset != 0) {
    const auto shifted = static_cast<std::int64_t>(spec.zeta) + c.zeta_offset;
    if (shifted < 0) throw InvalidArgument("--zeta-offset drives zeta below 0");
    spec = make_progression(b.family, spec.N, static_cast<std::uint64_t>(shifted));
  }
  return spec;
}

void run_concentration(Commands& c, Output& out) {
  const ProgressionSpec spec = analysis_progression(c);
  const ConcentrationReport r = sample_concentration(spec, c.samples ? c.samples : 10'000, c.cfg.seed, c.cfg.threads);
  if (out.csv()) {
    out.stream() << "value,count\n";
    for (const auto& [v, n] : r.histogram) out.stream() << v << ',' << n << '\n';
    return;
  }
  Json j = to_json(r);
  j["zeta"] = spec.zeta;
  j["zeta0"] = spec.zeta0;
  out.json(j);
}

void run_fairshare(Commands& c, Output& out) {
  const ProgressionSpec spec = analysis_progression(c);
  const std::uint64_t m = c.share_modulus.value_or(spec.family.params.m);
  const FairShareReport r = fair_share(spec, m, c.samples ? c.samples : 100'000, c.cfg.seed, c.cfg.threads);
  out.json({{"m", m}, {"samples", r.samples}, {"hits", r.hits}, {"ratio", r.ratio}, {"expected", r.expected}});
}

void run_orthogonality(Commands& c, Output& out) {
  const OrthogonalityReport r = exp_sum_orthogonality(parse_big(c.orth_L), parse_big(c.orth_mod2),
                                                      parse_big(c.orth_mod3), c.orth_k_lo, c.orth_k_hi, c.orth_m,
                                                      c.orth_t);
  out.json({{"interval", r.interval},
            {"m", c.orth_m},
            {"t", c.orth_t},
            {"p_direct", r.p_direct},
            {"p_reconstructed", r.p_reconstructed},
            {"difference", std::abs(static_cast<double>(r.p_direct) - r.p_reconstructed)}});
}

void run_hoeffding(Commands& c, Output& out) {
  const HoeffdingReport r = hoeffding_tail(c.hoeff_T, c.hoeff_t);
  out.json({{"T", c.hoeff_T},
            {"t", c.hoeff_t},
            {"empirical", rational_text(r.empirical)},
            {"empirical_value", r.empirical.get_d()},
            {"bound", r.bound},
            {"holds", r.holds}});
}

void run_gelfond(Commands& c, Output& out) {
  const GelfondReport r = gelfond_counts(parse_u64(c.gelfond_n), c.gelfond_m1, c.gelfond_m2, c.cfg.threads);
  out.json({{"N", parse_u64(c.gelfond_n)},
            {"m1", c.gelfond_m1},
            {"m2", c.gelfond_m2},
            {"counts", r.counts},
            {"expected", r.expected},
            {"max_relative_deviation", r.max_relative_deviation},
            {"condition_ok", r.condition_ok}});
}

void run_fit(Commands& c, Output& out) {
  std::vector<std::pair<double, double>> pts;
  if (!c.fit_points.empty()) {
    for (const auto& p : c.fit_points) {
      const auto colon = p.find(':');
      if (colon == std::string::npos) throw UsageError("--points entries look like N:count");
      pts.emplace_back(parse_big(p.substr(0, colon)).mpz().get_d(), parse_big(p.substr(colon + 1)).mpz().get_d());
    }
  } else {
    if (c.checkpoints.empty()) throw UsageError("analyze fit needs --checkpoints or --points");
    for (const auto& [n, cnt] : count_collisions(parse_u64_list(c.checkpoints), c.cfg.threads)) {
      pts.emplace_back(static_cast<double>(n), static_cast<double>(cnt));
    }
  }
  const FitResult r = fit_exponent(pts);
  Json points = Json::array();
  for (const auto& [x, y] : r.points) points.push_back({{"log_N", x}, {"log_count", y}});
  out.json({{"slope", r.slope}, {"intercept", r.intercept}, {"r_squared", r.r_squared}, {"points", points}});
}

void run_enum(Commands& c, Output& out) {
  const std::uint64_t limit = parse_u64(c.limit);
  const CollisionKind kind = c.almost ? CollisionKind::almost : CollisionKind::exact;
  std::ostream& os = out.stream();
  if (out.bfile()) {
    std::uint64_t i = 1;
    enumerate_collisions(limit, kind, c.cfg.threads, [&](const CollisionHit& h) { os << i++ << ' ' << h.n << '\n'; });
  } else if (out.csv()) {
    os << "n,s2,s3,kind\n";
    const char* name = to_string(kind);
    enumerate_collisions(limit, kind, c.cfg.threads,
                         [&](const CollisionHit& h) { os << h.n << ',' << h.s2 << ',' << h.s3 << ',' << name << '\n'; });
  } else if (c.cfg.format == "pretty") {
    Json all = Json::array();
    enumerate_collisions(limit, kind, c.cfg.threads, [&](const CollisionHit& h) { all.push_back(to_json(h, kind)); });
    out.json(all);
  } else {
    const std::string tail = std::string(",\"kind\":\"") + to_string(kind) + "\"}\n";
    enumerate_collisions(limit, kind, c.cfg.threads, [&](const CollisionHit& h) {
      os << "{\"n\":\"" << h.n << "\",\"s2\":" << h.s2 << ",\"s3\":" << h.s3 << tail;
    });
  }
}

void run_patterns(Commands& c, Output& out) {
  const std::uint64_t limit = parse_u64(c.limit);
  const std::set<unsigned> offsets(c.offsets.begin(), c.offsets.end());
  const std::vector<std::uint64_t> hits = find_patterns(limit, c.window, offsets);
  if (out.csv()) {
    out.stream() << "n\n";
    for (auto n : hits) out.stream() << n << '\n';
    return;
  }
  Json matches = Json::array();
  for (auto n : hits) matches.push_back(std::to_string(n));
  out.json({{"limit", std::to_string(limit)}, {"window", c.window}, {"offsets", offsets}, {"matches", matches}});
}

void run_count(Commands& c, Output& out) {
  if (c.checkpoints.empty()) throw UsageError("count needs --checkpoints");
  const auto counts = count_collisions(parse_u64_list(c.checkpoints), c.cfg.threads);
  if (out.csv()) {
    out.stream() << "N,count\n";
    for (const auto& [n, cnt] : counts) out.stream() << n << ',' << cnt << '\n';
    return;
  }
  Json rows = Json::array();
  for (const auto& [n, cnt] : counts) rows.push_back({{"N", std::to_string(n)}, {"count", cnt}});
  out.json({{"counts", rows}});
}

int run_compare(Commands& c, Output& out) {
  const std::uint64_t limit = parse_u64(c.limit);
  const BfileComparison r = compare_bfile(read_bfile_path(c.bfile_path), limit, c.cfg.threads);
  Json j{{"limit", std::to_string(limit)},
         {"match", r.match},
         {"compared", r.compared},
         {"reference_terms", r.reference_terms},
         {"enumerated_terms", r.enumerated_terms}};
  if (r.mismatch_index) j["mismatch_index"] = *r.mismatch_index;
  if (r.expected) j["expected"] = r.expected->to_string();
  if (r.actual) j["actual"] = r.actual->to_string();
  out.json(j);
  return r.match ? kExitOk : kExitDomain;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Commands c;
  CLI::App app{"Binary/ternary digit-sum collisions: enumeration, distributions and constructive search", "collider"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", c.cfg.seed, "master seed")->capture_default_str();
  std::optional<unsigned> threads;
  app.add_option("--threads", threads, "worker threads (default: $COLLIDER_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", c.cfg.format, "output format")->check(CLI::IsMember({"jsonl", "csv", "bfile", "pretty"}));
  app.add_option("--output", c.cfg.output, "write results to this file instead of stdout");

  std::vector<std::pair<CLI::App*, std::function<int(Output&)>>> handlers;
  auto on = [&](CLI::App* sub, std::function<void(Output&)> fn) {
    handlers.emplace_back(sub, [fn](Output& o) {
      fn(o);
      return kExitOk;
    });
  };

  auto* digits = app.add_subcommand("digits", "digit expansion and digit sum of n");
  digits->add_option("n", c.digits_n, "the integer")->required();
  digits->add_option("--base", c.digits_base, "base (2..36)")->check(CLI::Range(2, 36))->capture_default_str();
  digits->add_flag("--blocks", c.digits_blocks, "also count 1-blocks and base-4 ones");
  digits->add_flag("--valuation", c.digits_valuation, "also run the binomial valuation check");
  on(digits, [&](Output& o) { run_digits(c, o); });

  auto* dist = app.add_subcommand("dist", "truncated digit-sum difference distributions");
  dist->require_subcommand(1);
  auto add_tl = [&](CLI::App* s) {
    s->add_option("--t", c.dist_t, "shift t")->capture_default_str();
    s->add_option("--L", c.dist_L, "truncation length L")->required();
  };
  auto* phi = dist->add_subcommand("phi", "exact table of phi(j, t, L)");
  add_tl(phi);
  phi->add_option("--mode", c.dist_mode)->check(CLI::IsMember({"recurrence", "bruteforce"}))->capture_default_str();
  on(phi, [&](Output& o) { run_phi(c, o); });
  auto* om = dist->add_subcommand("omega", "characteristic function omega_t(theta, L)");
  add_tl(om);
  om->add_option("--theta", c.dist_theta)->required();
  om->add_option("--mode", c.dist_mode)->check(CLI::IsMember({"recurrence", "direct"}))->capture_default_str();
  on(om, [&](Output& o) { run_omega(c, o); });
  auto* mom = dist->add_subcommand("moments", "exact first and second moments");
  add_tl(mom);
  on(mom, [&](Output& o) { run_moments(c, o); });
  auto* bounds = dist->add_subcommand("bounds", "check m2 <= 2 nu and/or the block bound on omega");
  bounds->add_option("--nu", c.bounds_nu, "exhaustive m2 bound check up to this nu");
  bounds->add_option("--t", c.bounds_t, "shift for the omega block bound");
  bounds->add_option("--theta", c.dist_theta);
  bounds->add_option("--L", c.dist_L);
  on(bounds, [&](Output& o) { run_bounds(c, o); });

  auto* construct = app.add_subcommand("construct", "build a shift family and its progression");
  add_family_options(construct, c.fam);
  construct->add_option("--verify", c.verify_samples, "random checks of the difference property")
      ->capture_default_str();
  on(construct, [&](Output& o) { run_construct(c, o); });

  auto* forge = app.add_subcommand("forge", "manufacture a verified collision");
  add_family_options(forge, c.fam);
  forge->add_option("--budget", c.budget, "maximum progression samples")->capture_default_str();
  on(forge, [&](Output& o) { run_forge(c, o); });

  auto* en = app.add_subcommand("enum", "enumerate collisions below a limit");
  en->add_option("--limit", c.limit, "exclusive upper bound")->required();
  en->add_flag("--almost", c.almost, "report almost-collisions (s2 - s3 in {0,1})");
  handlers.emplace_back(en, [&](Output& o) {
    run_enum(c, o);
    return kExitOk;
  });

  auto* pat = app.add_subcommand("patterns", "windows whose collision set equals given offsets");
  pat->add_option("--limit", c.limit)->required();
  pat->add_option("--window", c.window)->required();
  pat->add_option("--offsets", c.offsets)->delimiter(',')->required();
  on(pat, [&](Output& o) { run_patterns(c, o); });

  auto* cnt = app.add_subcommand("count", "collision counts at checkpoints");
  cnt->add_option("--checkpoints", c.checkpoints, "increasing limits (decimal or b^e)")->delimiter(',');
  on(cnt, [&](Output& o) { run_count(c, o); });

  auto* cmp = app.add_subcommand("compare-bfile", "compare an OEIS b-file with the enumeration");
  cmp->add_option("--bfile", c.bfile_path)->required();
  cmp->add_option("--limit", c.limit, "compare terms below this value")->default_val("1000000");
  handlers.emplace_back(cmp, [&](Output& o) { return run_compare(c, o); });

  auto* an = app.add_subcommand("analyze", "empirical checks along the progression and beyond");
  an->require_subcommand(1);
  auto* conc = an->add_subcommand("concentration", "histogram of f along the progression");
  add_family_options(conc, c.fam);
  conc->add_option("--samples", c.samples, "default 10000");
  conc->add_option("--zeta-offset", c.zeta_offset, "shift zeta away from its chosen value");
  on(conc, [&](Output& o) { run_concentration(c, o); });
  auto* fs = an->add_subcommand("fairshare", "share of f = 0 mod m along the progression");
  add_family_options(fs, c.fam);
  fs->add_option("--samples", c.samples, "default 100000");
  fs->add_option("--zeta-offset", c.zeta_offset);
  fs->add_option("--modulus", c.share_modulus, "residue modulus (default: the family's m)");
  on(fs, [&](Output& o) { run_fairshare(c, o); });
  auto* orth = an->add_subcommand("orthogonality", "direct count vs exponential-sum reconstruction");
  orth->add_option("--L", c.orth_L)->capture_default_str();
  orth->add_option("--modulus2", c.orth_mod2)->capture_default_str();
  orth->add_option("--modulus3", c.orth_mod3)->capture_default_str();
  orth->add_option("--k-lo", c.orth_k_lo)->capture_default_str();
  orth->add_option("--k-hi", c.orth_k_hi)->capture_default_str();
  orth->add_option("--m", c.orth_m)->capture_default_str();
  orth->add_option("--t", c.orth_t)->capture_default_str();
  on(orth, [&](Output& o) { run_orthogonality(c, o); });
  auto* hoeff = an->add_subcommand("hoeffding", "exact binomial tail vs 2 exp(-2 t^2 / T)");
  hoeff->add_option("--T", c.hoeff_T)->capture_default_str();
  hoeff->add_option("--t", c.hoeff_t)->capture_default_str();
  on(hoeff, [&](Output& o) { run_hoeffding(c, o); });
  auto* gel = an->add_subcommand("gelfond", "joint residue counts of s2 mod m1 and s3 mod m2");
  gel->add_option("--N", c.gelfond_n)->capture_default_str();
  gel->add_option("--m1", c.gelfond_m1)->capture_default_str();
  gel->add_option("--m2", c.gelfond_m2)->capture_default_str();
  on(gel, [&](Output& o) { run_gelfond(c, o); });
  auto* fit = an->add_subcommand("fit", "log-log fit of collision counts");
  fit->add_option("--checkpoints", c.checkpoints, "limits to count at")->delimiter(',');
  fit->add_option("--points", c.fit_points, "precomputed N:count pairs")->delimiter(',');
  on(fit, [&](Output& o) { run_fit(c, o); });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    c.cfg.threads = threads ? *threads : default_threads();
    if (c.cfg.format == "bfile" && !en->parsed()) throw UsageError("--format bfile is only available for enum");
    Output output(c.cfg, out);
    for (auto& [sub, fn] : handlers) {
      if (sub->parsed()) {
        const int code = fn(output);
        output.stream().flush();
        return code;
      }
    }
    throw UsageError("no subcommand selected");
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SearchFailure& e) {
    err << "error: " << e.what() << " (" << e.detail() << ")\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}

}  // namespace collider::cli
