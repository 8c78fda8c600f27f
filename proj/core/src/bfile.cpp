#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "collider/collisions.hpp"
#include "collider/errors.hpp"

namespace collider {

std::vector<BfileEntry> read_bfile(std::istream& in) {
  std::vector<BfileEntry> out;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream fields(line.substr(start));
    std::string index_text;
    std::string value_text;
    std::string extra;
    fields >> index_text >> value_text;
    if (value_text.empty() || (fields >> extra)) {
      throw InvalidArgument("b-file line " + std::to_string(line_no) + ": expected \"index value\"");
    }
    BfileEntry e;
    try {
      e.index = BigNat::parse(index_text).to_u64();
      e.value = BigNat::parse(value_text);
    } catch (const std::exception& ex) {
      throw InvalidArgument("b-file line " + std::to_string(line_no) + ": " + ex.what());
    }
    if (!out.empty() && e.index != out.back().index + 1) {
      throw InvalidArgument("b-file line " + std::to_string(line_no) + ": indices are not consecutive");
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<BfileEntry> read_bfile_path(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open b-file " + path);
  return read_bfile(in);
}

void write_bfile(std::ostream& out, const std::vector<CollisionHit>& hits, std::uint64_t first_index) {
  std::uint64_t i = first_index;
  for (const auto& h : hits) out << i++ << ' ' << h.n << '\n';
}

BfileComparison compare_bfile(const std::vector<BfileEntry>& reference, std::uint64_t limit, unsigned threads) {
  BfileComparison cmp;
  const BigNat bound(limit);
  std::vector<const BfileEntry*> ref;
  for (const auto& e : reference) {
    if (e.value < bound) ref.push_back(&e);
  }
  cmp.reference_terms = ref.size();
  if (limit == 0) return cmp;

  enumerate_collisions(limit, CollisionKind::exact, threads, [&](const CollisionHit& h) {
    const std::uint64_t pos = cmp.enumerated_terms++;
    if (!cmp.match) return;
    if (pos >= ref.size()) {
      cmp.match = false;
      cmp.mismatch_index = (ref.empty() ? 1 : ref.front()->index) + pos;
      cmp.actual = BigNat(h.n);
      return;
    }
    if (ref[pos]->value != BigNat(h.n)) {
      cmp.match = false;
      cmp.mismatch_index = ref[pos]->index;
      cmp.expected = ref[pos]->value;
      cmp.actual = BigNat(h.n);
      return;
    }
    ++cmp.compared;
  });
  if (cmp.match && cmp.enumerated_terms < ref.size()) {
    cmp.match = false;
    cmp.mismatch_index = ref[cmp.enumerated_terms]->index;
    cmp.expected = ref[cmp.enumerated_terms]->value;
  }
  return cmp;
}

}  // namespace collider
