//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PAIRSCORE_DATASET_TRIPLES_HPP_
#define PAIRSCORE_DATASET_TRIPLES_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace pairscore::dataset {

/// One labeled (drug, drug', context) record.
struct Triple {
  std::string drug_1;
  std::string drug_2;
  std::string context;
  double label = 0.0;

  bool operator==(const Triple &) const = default;
};

/// Columnar labeled triple set. Rows are unique on (drug_1, drug_2, context)
/// in that order; labels lie in [0, 1].
class LabeledTriples {
 public:
  /// Throws LabelOutOfRange or DuplicateTriple.
  void add(std::string drug_1, std::string drug_2, std::string context,
           double label);
  void add(Triple t) {
    add(std::move(t.drug_1), std::move(t.drug_2), std::move(t.context), t.label);
  }

  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }

  const std::string &drug_1(std::size_t i) const { return drug_1_[i]; }
  const std::string &drug_2(std::size_t i) const { return drug_2_[i]; }
  const std::string &context(std::size_t i) const { return context_[i]; }
  double label(std::size_t i) const { return labels_[i]; }
  Triple row(std::size_t i) const;

  std::span<const double> labels() const noexcept { return labels_; }

  bool contains(std::string_view drug_1, std::string_view drug_2,
                std::string_view context) const;

  /// Rows at `indices`, in the given order.
  LabeledTriples subset(std::span<const std::size_t> indices) const;

  /// Distinct drug and context identifiers, sorted.
  std::vector<std::string> drugs() const;
  std::vector<std::string> contexts() const;

  bool operator==(const LabeledTriples &other) const;

 private:
  static std::string key(std::string_view a, std::string_view b, std::string_view c);

  std::vector<std::string> drug_1_;
  std::vector<std::string> drug_2_;
  std::vector<std::string> context_;
  std::vector<double> labels_;
  std::unordered_set<std::string> keys_;
};

/// Loads a `drug_1,drug_2,context,label` CSV.
/// Errors: FileNotFound, MalformedHeader, LabelOutOfRange, DuplicateTriple,
/// EmptyDataset.
LabeledTriples load_triples(const std::filesystem::path &path);

/// Writes the same CSV layout `load_triples` reads.
void write_triples(const std::filesystem::path &path, const LabeledTriples &y);

/// Seeded uniform partition with |train| = round(train_size * |y|), rows kept
/// in their original relative order. Errors: InvalidArgument, DegenerateSplit.
std::pair<LabeledTriples, LabeledTriples>
train_test_split(const LabeledTriples &y, double train_size, std::uint64_t seed);

/// Appends |y| negatives drawn uniformly over drug x drug x context (drugs and
/// contexts taken from y), rejecting self pairs and any unordered pair already
/// present in the same context. Input labels must all be 1.
/// Errors: InvalidArgument, InsufficientSpace.
LabeledTriples sample_negatives(const LabeledTriples &y, std::uint64_t seed);

}  // namespace pairscore::dataset

#endif  // PAIRSCORE_DATASET_TRIPLES_HPP_
