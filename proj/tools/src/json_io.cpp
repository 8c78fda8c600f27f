#include "json_io.hpp"

namespace collider::cli {
namespace {

const char* mode_name(ParamsMode m) { return m == ParamsMode::asymptotic ? "asymptotic" : "manual"; }

AnchorStrategy strategy_from(const std::string& s) {
  if (s == "uniform") return AnchorStrategy::uniform;
  if (s == "steered") return AnchorStrategy::steered;
  if (s == "automatic") return AnchorStrategy::automatic;
  throw InvalidArgument("unknown anchor strategy '" + s + "'");
}

}  // namespace

std::string rational_text(const Rational& q) { return q.get_str(); }

BigNat bignat_field(const Json& obj, const char* key) {
  if (!obj.contains(key)) throw InvalidArgument(std::string("missing field '") + key + "'");
  const Json& v = obj.at(key);
  if (v.is_string()) return BigNat::parse(v.get<std::string>());
  if (v.is_number_unsigned()) return BigNat(v.get<std::uint64_t>());
  throw InvalidArgument(std::string("field '") + key + "' must be a decimal string");
}

Json to_json(const Params& p) {
  Json j;
  j["mode"] = mode_name(p.mode);
  j["eta"] = p.eta;
  j["m"] = p.m;
  j["J"] = p.J;
  j["beta"] = p.beta;
  j["nu"] = p.nu;
  if (p.mode == ParamsMode::asymptotic) {
    j["lambda"] = p.lambda;
    j["fineness"] = p.fineness;
    j["epsilon"] = p.epsilon;
  }
  return j;
}

Json to_json(const ShiftFamily& fam) {
  Json j;
  j["anchor_strategy"] = to_string(fam.anchor_strategy);
  j["a"] = fam.a.to_string();
  j["K"] = fam.K.to_string();
  j["L"] = fam.L.to_string();
  j["modulus"] = fam.modulus().to_string();
  Json shifts = Json::array();
  for (std::int64_t s = -fam.params.J; s <= fam.params.J; ++s) {
    shifts.push_back({{"j", s}, {"d", fam.d[s].to_string()}, {"delta", fam.delta[s]}, {"xi", fam.xi[s]}});
  }
  j["shifts"] = std::move(shifts);
  return j;
}

Json to_json(const ProgressionSpec& spec) {
  Json j;
  j["N"] = spec.N.to_string();
  j["N_bits"] = spec.N.bit_length();
  j["zeta"] = spec.zeta;
  j["zeta0"] = spec.zeta0;
  j["zeta_clamped"] = spec.zeta_clamped;
  j["modulus"] = spec.modulus.to_string();
  j["k_lo"] = spec.k_lo.to_string();
  j["k_hi"] = spec.k_hi.to_string();
  j["interval_bits"] = spec.interval_size().bit_length();
  j["r2"] = spec.r2.to_string();
  j["b2"] = spec.b2.to_string();
  return j;
}

Json to_json(const Certificate& cert) {
  Json j;
  j["n"] = cert.record.n.to_string();
  j["bits"] = cert.record.n.bit_length();
  j["s2"] = cert.record.s2;
  j["s3"] = cert.record.s3;
  j["k"] = cert.k.to_string();
  j["j"] = cert.j;
  j["used_plus_one"] = cert.used_plus_one;
  j["samples"] = cert.samples;
  j["verified"] = certificate_violations(cert).empty();
  j["params"] = to_json(cert.spec.family.params);
  j["family"] = to_json(cert.spec.family);
  j["progression"] = to_json(cert.spec);
  return j;
}

Json to_json(const CollisionHit& hit, CollisionKind kind) {
  return {{"n", std::to_string(hit.n)}, {"s2", hit.s2}, {"s3", hit.s3}, {"kind", to_string(kind)}};
}

Json to_json(const DistTable& table) {
  Json counts = Json::object();
  for (const auto& [j, c] : table.counts) counts[std::to_string(j)] = c.to_string();
  return {{"t", table.t.to_string()}, {"L", table.L}, {"counts", std::move(counts)}};
}

Json to_json(const ConcentrationReport& r) {
  Json hist = Json::object();
  for (const auto& [v, c] : r.histogram) hist[std::to_string(v)] = c;
  Json j;
  j["samples"] = r.samples;
  j["window"] = r.window;
  j["inside_fraction"] = r.inside_fraction;
  j["mean"] = r.mean;
  j["sd"] = r.sd;
  j["E2"] = r.E2;
  j["E3"] = r.E3;
  j["center"] = r.center;
  j["alpha"] = r.alpha;
  j["kappa2"] = r.kappa2;
  j["sigma"] = r.sigma;
  j["rho"] = r.rho;
  j["T"] = r.T;
  j["histogram"] = std::move(hist);
  return j;
}

ShiftFamily family_from_json(const Json& params, const Json& family) {
  Params p = make_params(ManualParams{params.at("eta").get<std::uint64_t>(), params.at("m").get<std::uint64_t>(),
                                      params.at("J").get<std::int64_t>()});
  if (params.value("mode", std::string("manual")) == "asymptotic") {
    p.mode = ParamsMode::asymptotic;
    p.lambda = params.value("lambda", std::uint64_t{0});
    p.fineness = params.value("fineness", std::uint64_t{0});
    p.epsilon = params.value("epsilon", kDefaultEpsilon);
  }
  ShiftFamily fam;
  fam.params = p;
  fam.d = build_shifts(p);
  fam.delta = ByShift<std::int64_t>(p.J);
  fam.xi = ByShift<int>(p.J);
  fam.a = bignat_field(family, "a");
  fam.K = bignat_field(family, "K");
  fam.L = bignat_field(family, "L");
  fam.anchor_strategy = strategy_from(family.value("anchor_strategy", std::string("uniform")));
  const Json& shifts = family.at("shifts");
  if (!shifts.is_array() || shifts.size() != static_cast<std::size_t>(2 * p.J + 1)) {
    throw InvalidArgument("family has the wrong number of shifts");
  }
  for (const auto& s : shifts) {
    const auto j = s.at("j").get<std::int64_t>();
    if (bignat_field(s, "d") != fam.d[j]) throw InvalidArgument("shift d_" + std::to_string(j) + " is not canonical");
    fam.delta[j] = s.at("delta").get<std::int64_t>();
    fam.xi[j] = s.at("xi").get<int>();
  }
  const auto bad = family_violations(fam);
  if (!bad.empty()) throw InvalidArgument("family fails verification: " + bad.front());
  return fam;
}

}  // namespace collider::cli
