#pragma once

#include <nlohmann/json.hpp>

#include "collider/collider.hpp"

namespace collider::cli {

using Json = nlohmann::ordered_json;

Json to_json(const Params& p);
Json to_json(const ShiftFamily& fam);
Json to_json(const ProgressionSpec& spec);
Json to_json(const Certificate& cert);
Json to_json(const CollisionHit& hit, CollisionKind kind);
Json to_json(const DistTable& table);
Json to_json(const ConcentrationReport& r);

std::string rational_text(const Rational& q);

/// Rebuilds a family from to_json(ShiftFamily) output (with its "params").
/// The result is checked with family_violations; any violation throws.
ShiftFamily family_from_json(const Json& params, const Json& family);

BigNat bignat_field(const Json& obj, const char* key);

}  // namespace collider::cli
