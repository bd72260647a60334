//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PAIRSCORE_PIPELINE_SYNTHETIC_HPP_
#define PAIRSCORE_PIPELINE_SYNTHETIC_HPP_

#include <cstddef>
#include <cstdint>
#include <string>

#include "pairscore/dataset/feature_sets.hpp"
#include "pairscore/dataset/triples.hpp"
#include "pairscore/rng.hpp"

namespace pairscore::pipeline {

/// A random acyclic-or-monocyclic organic molecule with `min_atoms` to
/// `max_atoms` heavy atoms (plus an optional benzene ring), always parseable.
std::string random_smiles(Rng &rng, std::size_t min_atoms, std::size_t max_atoms);

/// Feature sets plus labeled triples, all generated from one seed.
struct SyntheticData {
  dataset::DrugFeatureSet drugs;
  dataset::ContextFeatureSet contexts;
  dataset::LabeledTriples triples;
};

/// `n_drugs` molecules with pairwise distinct fingerprints ("D0", "D1", ...)
/// and `n_contexts` contexts ("C0", ...) of `context_width` uniform(-1, 1)
/// features. No triples.
SyntheticData synthetic_feature_sets(std::size_t n_drugs, std::size_t n_contexts,
                                     std::size_t context_width, std::uint64_t seed,
                                     std::size_t min_atoms = 6, std::size_t max_atoms = 14);

/// Benchmark workload: `n_pairs` distinct triples (d != d') with fair coin
/// labels. Errors: InsufficientSpace.
SyntheticData synthetic_workload(std::size_t n_drugs, std::size_t n_contexts,
                                 std::size_t context_width, std::size_t n_pairs,
                                 std::uint64_t seed);

/// Dataset whose labels are a fixed function of two fingerprint bits a, b
/// and the context:
///   context C0: a(d) and a(d')
///   context C1: (a(d) and a(d')) or (b(d) and b(d'))
/// Bit a is the one whose frequency over the drugs is nearest 1/2, bit b the
/// remaining one nearest 0.35.
struct PlantedSignal {
  SyntheticData data;
  std::size_t bit_a = 0;
  std::size_t bit_b = 0;
};

/// 20 drugs x 2 contexts, 512 distinct triples with d != d'.
PlantedSignal planted_signal(std::uint64_t seed, std::size_t n_drugs = 20,
                             std::size_t n_triples = 512, std::size_t context_width = 8);

}  // namespace pairscore::pipeline

#endif  // PAIRSCORE_PIPELINE_SYNTHETIC_HPP_
