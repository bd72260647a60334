//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "pairscore/molio/fingerprint.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>

#include "pairscore/error.hpp"

namespace pairscore::molio {
namespace {
class ByteWriter {
 public:
  void i32(std::int32_t v) { put(static_cast<std::uint32_t>(v), 4); }
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  std::span<const std::uint8_t> bytes() const { return buf_; }

 private:
  void put(std::uint64_t v, int n) {
    for (int k = 0; k < n; ++k) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
  }
  std::vector<std::uint8_t> buf_;
};

using AtomSet = std::vector<std::uint32_t>;

AtomSet merge(const AtomSet &a, const AtomSet &b) {
  AtomSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}
}  // namespace

std::size_t Fingerprint::popcount() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint8_t b: bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t atom_invariant(const AtomRecord &atom) noexcept {
  ByteWriter w;
  w.i32(static_cast<std::int32_t>(atom.element));
  w.i32(atom.degree);
  w.i32(atom.formal_charge);
  w.i32(atom.h_count);
  w.i32(atom.aromatic ? 1 : 0);
  return fnv1a64(w.bytes());
}

std::vector<std::uint64_t> morgan_identifiers(const MolecularGraph &graph,
                                              int radius) {
  if (radius < 0) throw Error(ErrorCode::InvalidArgument, "negative radius");
  const std::size_t n = graph.atom_count();

  std::vector<std::vector<std::pair<std::int32_t, std::size_t>>> neighbors(n);
  for (const auto &bond: graph.bonds) {
    const auto code = static_cast<std::int32_t>(bond.order);
    neighbors[bond.i].emplace_back(code, bond.j);
    neighbors[bond.j].emplace_back(code, bond.i);
  }

  std::vector<std::uint64_t> ids(n);
  std::vector<AtomSet> cover(n);
  for (std::size_t a = 0; a < n; ++a) {
    ids[a] = atom_invariant(graph.atoms[a]);
    cover[a] = { static_cast<std::uint32_t>(a) };
  }

  // covered set -> radius at which it first appeared
  std::map<AtomSet, int> first_seen;
  std::vector<std::uint64_t> kept;
  const auto offer = [&](std::uint64_t id, const AtomSet &set, int r) {
    auto [it, inserted] = first_seen.emplace(set, r);
    if (inserted || it->second == r) kept.push_back(id);
  };
  for (std::size_t a = 0; a < n; ++a) offer(ids[a], cover[a], 0);

  std::vector<std::pair<std::int32_t, std::uint64_t>> env;
  for (int r = 1; r <= radius; ++r) {
    std::vector<std::uint64_t> next_ids(n);
    std::vector<AtomSet> next_cover(n);
    for (std::size_t a = 0; a < n; ++a) {
      env.clear();
      AtomSet set = cover[a];
      for (const auto &[code, nbr]: neighbors[a]) {
        env.emplace_back(code, ids[nbr]);
        set = merge(set, cover[nbr]);
      }
      std::sort(env.begin(), env.end());

      ByteWriter w;
      w.i32(r);
      w.u64(ids[a]);
      w.u32(static_cast<std::uint32_t>(env.size()));
      for (const auto &[code, id]: env) {
        w.i32(code);
        w.u64(id);
      }
      next_ids[a] = fnv1a64(w.bytes());
      next_cover[a] = std::move(set);
    }
    ids = std::move(next_ids);
    cover = std::move(next_cover);
    for (std::size_t a = 0; a < n; ++a) offer(ids[a], cover[a], r);
  }

  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  return kept;
}

Fingerprint morgan_fingerprint(const MolecularGraph &graph, int radius,
                               std::size_t n_bits) {
  if (n_bits == 0) throw Error(ErrorCode::InvalidArgument, "n_bits must be positive");
  Fingerprint fp(n_bits);
  for (std::uint64_t id: morgan_identifiers(graph, radius)) fp.set(id % n_bits);
  return fp;
}

}  // namespace pairscore::molio
