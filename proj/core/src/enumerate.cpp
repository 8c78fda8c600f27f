#include <algorithm>

#include "collider/collisions.hpp"
#include "collider/errors.hpp"
#include "parallel.hpp"
#include "scan.hpp"

namespace collider {
namespace {

std::vector<CollisionHit> scan_chunk(std::uint64_t lo, std::uint64_t hi, CollisionKind kind) {
  std::vector<CollisionHit> hits;
  const std::uint32_t slack = kind == CollisionKind::almost ? 1 : 0;
  detail::scan_range(lo, hi, [&](std::uint64_t n, std::uint32_t s2, std::uint32_t s3) {
    if (s2 - s3 <= slack) hits.push_back({n, s2, s3});  // unsigned wrap rejects s2 < s3
  });
  return hits;
}

}  // namespace

const char* to_string(CollisionKind kind) { return kind == CollisionKind::exact ? "exact" : "almost"; }

void enumerate_collisions(std::uint64_t limit, CollisionKind kind, unsigned threads, const HitSink& sink) {
  if (limit < 1) throw InvalidArgument("enumeration limit must be >= 1");
  threads = std::max(1u, threads);
  const std::uint64_t chunks = (limit - 1) / detail::kChunkSize + 1;
  std::vector<std::vector<CollisionHit>> round(threads);
  for (std::uint64_t first = 0; first < chunks; first += threads) {
    const auto width = static_cast<std::size_t>(std::min<std::uint64_t>(threads, chunks - first));
    detail::parallel_for(width, threads, [&](std::size_t i) {
      const std::uint64_t lo = (first + i) * detail::kChunkSize;
      const std::uint64_t hi = std::min(limit, lo + detail::kChunkSize);
      round[i] = scan_chunk(lo, hi, kind);
    });
    for (std::size_t i = 0; i < width; ++i) {
      for (const auto& hit : round[i]) sink(hit);
      round[i].clear();
    }
  }
}

std::vector<CollisionRecord> collect_collisions(std::uint64_t limit, CollisionKind kind, unsigned threads) {
  std::vector<CollisionRecord> out;
  enumerate_collisions(limit, kind, threads, [&](const CollisionHit& h) { out.push_back(h.to_record(kind)); });
  return out;
}

std::vector<std::uint64_t> find_patterns(std::uint64_t limit, unsigned window, const std::set<unsigned>& offsets) {
  if (window < 1 || window > 64) throw InvalidArgument("pattern window must lie in [1, 64]");
  std::uint64_t target = 0;
  for (unsigned v : offsets) {
    if (v >= window) throw InvalidArgument("pattern offset " + std::to_string(v) + " outside the window");
    target |= std::uint64_t{1} << v;
  }
  std::vector<std::uint64_t> out;
  if (limit == 0) return out;
  // Bit v of `mask` records f(n + v) = 0 for the window starting at n.
  std::uint64_t mask = 0;
  const std::uint64_t top = std::uint64_t{1} << (window - 1);
  const std::uint64_t end = limit + window - 1;
  detail::scan_range(0, end, [&](std::uint64_t x, std::uint32_t s2, std::uint32_t s3) {
    mask = (mask >> 1) | (s2 == s3 ? top : 0);
    if (x + 1 >= window) {
      const std::uint64_t n = x + 1 - window;
      if (mask == target) out.push_back(n);
    }
  });
  return out;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> count_collisions(const std::vector<std::uint64_t>& checkpoints,
                                                                       unsigned threads) {
  for (std::size_t i = 1; i < checkpoints.size(); ++i) {
    if (checkpoints[i] <= checkpoints[i - 1]) throw InvalidArgument("checkpoints must be strictly increasing");
  }
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  if (checkpoints.empty()) return out;

  // Segments cut at every chunk boundary and every checkpoint.
  std::vector<std::uint64_t> cuts{0};
  std::size_t next_cp = 0;
  for (std::uint64_t x = 0; x < checkpoints.back();) {
    std::uint64_t nxt = std::min(checkpoints.back(), x + detail::kChunkSize);
    while (next_cp < checkpoints.size() && checkpoints[next_cp] <= x) ++next_cp;
    if (next_cp < checkpoints.size()) nxt = std::min(nxt, checkpoints[next_cp]);
    cuts.push_back(nxt);
    x = nxt;
  }
  std::vector<std::uint64_t> counts(cuts.size() - 1, 0);
  detail::parallel_for(counts.size(), threads, [&](std::size_t i) {
    std::uint64_t c = 0;
    detail::scan_range(cuts[i], cuts[i + 1], [&](std::uint64_t, std::uint32_t s2, std::uint32_t s3) { c += s2 == s3; });
    counts[i] = c;
  });

  std::uint64_t running = 0;
  std::size_t seg = 0;
  for (std::uint64_t cp : checkpoints) {
    while (seg < counts.size() && cuts[seg + 1] <= cp) running += counts[seg++];
    out.emplace_back(cp, running);
  }
  return out;
}

}  // namespace collider
