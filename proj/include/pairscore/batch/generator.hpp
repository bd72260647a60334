//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PAIRSCORE_BATCH_GENERATOR_HPP_
#define PAIRSCORE_BATCH_GENERATOR_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pairscore/batch/packed_graph.hpp"
#include "pairscore/dataset/feature_sets.hpp"
#include "pairscore/dataset/triples.hpp"
#include "pairscore/tensor.hpp"

namespace pairscore::batch {

/// Which feature groups a generator collates.
struct BatchFlags {
  bool context_features = true;
  bool drug_features = true;
  bool drug_molecules = false;
};

/// One generator emission. Fields whose flag is off are left empty.
struct DrugPairBatch {
  std::optional<Tensor> context_features;     // B x k
  std::optional<Tensor> drug_features_left;   // B x fingerprint bits
  std::optional<Tensor> drug_features_right;  // B x fingerprint bits
  std::optional<PackedGraph> graphs_left;
  std::optional<PackedGraph> graphs_right;
  std::vector<double> labels;
  std::vector<dataset::Triple> identifiers;

  std::size_t size() const noexcept { return labels.size(); }
};

/// Collates one batch from explicit triple rows.
DrugPairBatch collate(const dataset::LabeledTriples &triples,
                      std::span<const std::size_t> rows,
                      const dataset::DrugFeatureSet &drugs,
                      const dataset::ContextFeatureSet &contexts,
                      const BatchFlags &flags);

/// Emits drug pair batches over a labeled triple set, one epoch at a time.
///
/// Features stay in the feature sets and are copied into each batch as it is
/// built. When shuffling is on, epoch e visits the rows in a permutation
/// derived only from (shuffle_seed, e); otherwise rows are visited in order.
/// The last batch of an epoch may be short.
///
/// The feature sets are borrowed and must outlive the generator.
class BatchGenerator {
 public:
  /// Throws InvalidArgument (batch_size 0) and UnresolvableIdentifier.
  BatchGenerator(dataset::LabeledTriples triples,
                 const dataset::DrugFeatureSet &drugs,
                 const dataset::ContextFeatureSet &contexts,
                 std::size_t batch_size, BatchFlags flags,
                 std::uint64_t shuffle_seed, bool shuffle = true);

  /// Replaces the triple set (e.g. swap training rows for test rows).
  void set_triples(dataset::LabeledTriples triples);
  void set_shuffle(bool shuffle) noexcept { shuffle_ = shuffle; }
  bool shuffle() const noexcept { return shuffle_; }

  /// Positions the generator at the start of epoch `epoch`.
  void begin_epoch(std::uint64_t epoch);

  /// Next batch of the current epoch, or nullopt once it is exhausted.
  std::optional<DrugPairBatch> next();

  /// Collects a full epoch; convenient for small sets and tests.
  std::vector<DrugPairBatch> epoch(std::uint64_t epoch);

  std::size_t batches_per_epoch() const noexcept;
  std::size_t batch_size() const noexcept { return batch_size_; }
  const BatchFlags &flags() const noexcept { return flags_; }
  const dataset::LabeledTriples &triples() const noexcept { return triples_; }
  const dataset::DrugFeatureSet &drugs() const noexcept { return *drugs_; }
  const dataset::ContextFeatureSet &contexts() const noexcept { return *contexts_; }

 private:
  void check_identifiers() const;

  dataset::LabeledTriples triples_;
  const dataset::DrugFeatureSet *drugs_;
  const dataset::ContextFeatureSet *contexts_;
  std::size_t batch_size_;
  BatchFlags flags_;
  std::uint64_t seed_;
  bool shuffle_;
  std::vector<std::size_t> order_;
  std::size_t cursor_ = 0;
};

}  // namespace pairscore::batch

#endif  // PAIRSCORE_BATCH_GENERATOR_HPP_
