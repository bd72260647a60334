//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "pairscore/pipeline/synthetic.hpp"

#include <cmath>
#include <set>
#include <unordered_set>

#include "pairscore/error.hpp"

namespace pairscore::pipeline {
namespace {
const char *random_symbol(Rng &rng) {
  const double u = rng.uniform();
  if (u < 0.60) return "C";
  if (u < 0.75) return "N";
  if (u < 0.88) return "O";
  if (u < 0.93) return "S";
  if (u < 0.97) return "F";
  return "Cl";
}

bool terminal(const char *symbol) {
  return std::string_view(symbol) == "F" || std::string_view(symbol) == "Cl";
}

std::uint64_t triple_code(std::size_t a, std::size_t b, std::size_t c, std::size_t n_drugs) {
  return (static_cast<std::uint64_t>(c) * n_drugs + a) * n_drugs + b;
}
}  // namespace

std::string random_smiles(Rng &rng, std::size_t min_atoms, std::size_t max_atoms) {
  if (min_atoms == 0 || max_atoms < min_atoms) {
    throw Error(ErrorCode::InvalidArgument, "random_smiles: bad atom range");
  }
  const std::size_t n = min_atoms + rng.index(max_atoms - min_atoms + 1);
  std::string s;
  if (rng.uniform() < 0.3) s = "c1ccccc1";
  std::size_t depth = 0;
  bool ring_open = false;
  std::size_t chain_since_ring = 0;  // depth-0 atoms since the ring opened
  bool ring_done = false;
  for (std::size_t i = 0; i < n; ++i) {
    const char *sym = random_symbol(rng);
    // Halogens end a chain, so only allow them where a branch can close.
    const bool last = i + 1 == n;
    if (terminal(sym) && !(last || depth > 0)) sym = "C";
    if (i > 0 || !s.empty()) {
      if (!terminal(sym) && rng.uniform() < 0.1) s += '=';
    }
    s += sym;
    if (terminal(sym) && depth > 0) {
      s += ')';
      --depth;
      continue;
    }
    if (!terminal(sym)) {
      if (depth == 0) ++chain_since_ring;
      if (!ring_open && !ring_done && depth == 0 && std::string_view(sym) == "C"
          && rng.uniform() < 0.25) {
        s += '2';
        ring_open = true;
        chain_since_ring = 0;
      } else if (ring_open && depth == 0 && chain_since_ring >= 3 && std::string_view(sym) == "C"
                 && rng.uniform() < 0.5) {
        s += '2';
        ring_open = false;
        ring_done = true;
      }
      if (!last && depth < 2 && rng.uniform() < 0.2) {
        s += '(';
        ++depth;
      } else if (depth > 0 && rng.uniform() < 0.4) {
        s += ')';
        --depth;
      }
    }
  }
  // An open branch must hold at least one atom before it closes.
  if (!s.empty() && s.back() == '(') {
    s += 'C';
  }
  while (depth-- > 0) s += ')';
  if (ring_open) {
    // Close the ring on a fresh carbon placed far enough along the chain.
    s += "CCC2";
  }
  return s;
}

SyntheticData synthetic_feature_sets(std::size_t n_drugs, std::size_t n_contexts,
                                     std::size_t context_width, std::uint64_t seed,
                                     std::size_t min_atoms, std::size_t max_atoms) {
  if (n_contexts == 0 || context_width == 0) {
    throw Error(ErrorCode::InvalidArgument, "synthetic data needs contexts with features");
  }
  SyntheticData out;
  Rng rng(seed);
  std::set<std::vector<std::uint8_t>> seen;
  std::size_t attempts = 0;
  while (out.drugs.size() < n_drugs) {
    if (++attempts > 1000 * (n_drugs + 1)) {
      throw Error(ErrorCode::InsufficientSpace, "could not draw distinct molecules");
    }
    dataset::DrugRecord record = dataset::featurize(random_smiles(rng, min_atoms, max_atoms));
    const auto bits = record.fingerprint.bits();
    if (!seen.emplace(bits.begin(), bits.end()).second) continue;
    out.drugs.insert("D" + std::to_string(out.drugs.size()), std::move(record));
  }
  for (std::size_t c = 0; c < n_contexts; ++c) {
    std::vector<double> features(context_width);
    for (double &x: features) x = rng.uniform(-1.0, 1.0);
    out.contexts.insert("C" + std::to_string(c), std::move(features));
  }
  return out;
}

SyntheticData synthetic_workload(std::size_t n_drugs, std::size_t n_contexts,
                                 std::size_t context_width, std::size_t n_pairs,
                                 std::uint64_t seed) {
  const std::size_t space = n_drugs * (n_drugs > 0 ? n_drugs - 1 : 0) * n_contexts;
  if (n_pairs > space / 2) {
    throw Error(ErrorCode::InsufficientSpace, std::to_string(n_pairs) + " pairs requested from a space of "
                                                  + std::to_string(space));
  }
  SyntheticData out = synthetic_feature_sets(n_drugs, n_contexts, context_width, seed);
  Rng rng(Rng::derive(seed, 1));
  const auto &drug_ids = out.drugs.ids();
  const auto &context_ids = out.contexts.ids();
  std::unordered_set<std::uint64_t> used;
  while (out.triples.size() < n_pairs) {
    const std::size_t a = rng.index(n_drugs);
    const std::size_t b = rng.index(n_drugs);
    const std::size_t c = rng.index(n_contexts);
    if (a == b || !used.insert(triple_code(a, b, c, n_drugs)).second) continue;
    out.triples.add(drug_ids[a], drug_ids[b], context_ids[c], rng.uniform() < 0.5 ? 1.0 : 0.0);
  }
  return out;
}

PlantedSignal planted_signal(std::uint64_t seed, std::size_t n_drugs, std::size_t n_triples,
                             std::size_t context_width) {
  constexpr std::size_t n_contexts = 2;
  if (n_triples > n_drugs * (n_drugs - 1) * n_contexts) {
    throw Error(ErrorCode::InsufficientSpace, "too many triples for the planted drug set");
  }
  PlantedSignal out;
  out.data = synthetic_feature_sets(n_drugs, n_contexts, context_width, seed);
  const auto &ids = out.data.drugs.ids();
  const std::size_t width = out.data.drugs.fingerprint_width();

  std::vector<std::size_t> counts(width, 0);
  for (const auto &id: ids) {
    const auto &fp = out.data.drugs.at(id).fingerprint;
    for (std::size_t k = 0; k < width; ++k) counts[k] += fp.test(k) ? 1 : 0;
  }
  auto nearest = [&](double target, std::size_t skip) {
    std::size_t best = width;
    double best_gap = 0.0;
    for (std::size_t k = 0; k < width; ++k) {
      if (k == skip) continue;
      const double gap = std::abs(static_cast<double>(counts[k]) / static_cast<double>(n_drugs) - target);
      if (best == width || gap < best_gap) {
        best = k;
        best_gap = gap;
      }
    }
    return best;
  };
  out.bit_a = nearest(0.5, width);
  out.bit_b = nearest(0.35, out.bit_a);

  auto bit = [&](std::size_t d, std::size_t k) { return out.data.drugs.at(ids[d]).fingerprint.test(k); };
  Rng rng(Rng::derive(seed, 2));
  std::unordered_set<std::uint64_t> used;
  const auto &contexts = out.data.contexts.ids();
  while (out.data.triples.size() < n_triples) {
    const std::size_t a = rng.index(n_drugs);
    const std::size_t b = rng.index(n_drugs);
    const std::size_t c = rng.index(n_contexts);
    if (a == b || !used.insert(triple_code(a, b, c, n_drugs)).second) continue;
    bool label = bit(a, out.bit_a) && bit(b, out.bit_a);
    if (c == 1) label = label || (bit(a, out.bit_b) && bit(b, out.bit_b));
    out.data.triples.add(ids[a], ids[b], contexts[c], label ? 1.0 : 0.0);
  }
  return out;
}

}  // namespace pairscore::pipeline
