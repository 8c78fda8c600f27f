#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "collider/bignat.hpp"
#include "collider/constructor.hpp"
#include "collider/random.hpp"

namespace collider {

enum class CollisionKind { exact, almost };

const char* to_string(CollisionKind kind);

/// n with s_2(n) = s_3(n) (exact) or s_2(n) - s_3(n) in {0, 1} (almost).
struct CollisionRecord {
  BigNat n;
  std::uint64_t s2 = 0;
  std::uint64_t s3 = 0;
  CollisionKind kind = CollisionKind::exact;

  friend bool operator==(const CollisionRecord&, const CollisionRecord&) = default;
};

/// Lightweight record used by the enumerator's streaming interface.
struct CollisionHit {
  std::uint64_t n = 0;
  std::uint32_t s2 = 0;
  std::uint32_t s3 = 0;

  CollisionRecord to_record(CollisionKind kind) const { return {BigNat(n), s2, s3, kind}; }
  friend bool operator==(const CollisionHit&, const CollisionHit&) = default;
};

using HitSink = std::function<void(const CollisionHit&)>;

/// Streams every n < limit of the requested kind, in increasing order.
/// Work is split into 2^20-wide chunks processed `threads` at a time and
/// merged in order, so the output does not depend on the thread count.
void enumerate_collisions(std::uint64_t limit, CollisionKind kind, unsigned threads, const HitSink& sink);

std::vector<CollisionRecord> collect_collisions(std::uint64_t limit, CollisionKind kind = CollisionKind::exact,
                                                unsigned threads = 1);

/// All n < limit whose zero set {v < window : f(n + v) = 0} is exactly
/// `offsets`. window must lie in [1, 64].
std::vector<std::uint64_t> find_patterns(std::uint64_t limit, unsigned window, const std::set<unsigned>& offsets);

/// Exact #{n < N_i : f(n) = 0} for each increasing checkpoint N_i.
std::vector<std::pair<std::uint64_t, std::uint64_t>> count_collisions(const std::vector<std::uint64_t>& checkpoints,
                                                                       unsigned threads = 1);

// ---------------------------------------------------------------------------
// Collision factory

struct Certificate {
  CollisionRecord record;
  ProgressionSpec spec;
  BigNat k;
  std::int64_t j = 0;
  bool used_plus_one = false;
  std::uint64_t samples = 0;  // progression elements examined
};

struct ForgeOptions {
  std::uint64_t budget = 200'000;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 1;
};

/// Samples k uniformly from I until f(L + modulus k) = -j m for some
/// |j| <= J, then shifts by d_j (and by 1 when xi_j = 1). Samples are drawn
/// from 16 fixed lanes and the first success in lane order wins, so the
/// result depends on the seed only.
Certificate forge_collision(const ProgressionSpec& spec, const ForgeOptions& options = {});

/// Problems found when replaying the arithmetic trail of a certificate.
std::vector<std::string> certificate_violations(const Certificate& cert);

// ---------------------------------------------------------------------------
// OEIS b-files

struct BfileEntry {
  std::uint64_t index = 0;
  BigNat value;
};

/// Parses "index value" lines; '#' comments and blank lines are skipped.
std::vector<BfileEntry> read_bfile(std::istream& in);
std::vector<BfileEntry> read_bfile_path(const std::string& path);

void write_bfile(std::ostream& out, const std::vector<CollisionHit>& hits, std::uint64_t first_index = 1);

struct BfileComparison {
  bool match = true;
  std::uint64_t compared = 0;
  std::uint64_t reference_terms = 0;  // reference entries with value below the limit
  std::uint64_t enumerated_terms = 0;
  std::optional<std::uint64_t> mismatch_index;
  std::optional<BigNat> expected;
  std::optional<BigNat> actual;
};

/// Compares the reference entries with value < limit against the enumerated
/// exact collisions below limit, entry by entry.
BfileComparison compare_bfile(const std::vector<BfileEntry>& reference, std::uint64_t limit, unsigned threads = 1);

}  // namespace collider
