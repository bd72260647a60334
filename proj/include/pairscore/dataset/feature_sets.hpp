//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PAIRSCORE_DATASET_FEATURE_SETS_HPP_
#define PAIRSCORE_DATASET_FEATURE_SETS_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pairscore/molio/fingerprint.hpp"
#include "pairscore/molio/smiles.hpp"
#include "pairscore/tensor.hpp"

namespace pairscore::dataset {

/// Everything the drug encoders may consume for one drug.
struct DrugRecord {
  std::string smiles;
  molio::MolecularGraph graph;
  molio::Fingerprint fingerprint;
  Tensor atom_features;
  Tensor bond_features;
};

/// Featurizes one SMILES string eagerly; parse errors propagate.
DrugRecord featurize(std::string smiles);

/// Outcome of featurizing one input row.
struct RowDiagnostic {
  std::string drug_id;
  std::string smiles;
  bool ok = false;
  std::string error;  // error name when !ok
  std::string message;
  std::size_t atoms = 0;
  std::size_t bonds = 0;
  std::size_t popcount = 0;
};

/// drug-id -> DrugRecord.
class DrugFeatureSet {
 public:
  /// Throws DuplicateKey.
  void insert(std::string id, DrugRecord record);

  const DrugRecord *find(std::string_view id) const;
  /// Throws UnresolvableIdentifier.
  const DrugRecord &at(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id) != nullptr; }

  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }

  /// Rows discarded at load time because their SMILES did not parse.
  std::size_t dropped() const noexcept { return dropped_; }
  void set_dropped(std::size_t n) noexcept { dropped_ = n; }

  /// Identifiers in insertion order.
  const std::vector<std::string> &ids() const noexcept { return order_; }

  /// Fingerprint width shared by all records (0 when empty).
  std::size_t fingerprint_width() const noexcept;

  bool operator==(const DrugFeatureSet &other) const;

 private:
  std::unordered_map<std::string, DrugRecord> records_;
  std::vector<std::string> order_;
  std::size_t dropped_ = 0;
};

/// context-id -> feature vector of uniform width.
class ContextFeatureSet {
 public:
  /// Throws DuplicateKey, RaggedRows, or InvalidArgument for an empty vector.
  void insert(std::string id, std::vector<double> features);

  const std::vector<double> *find(std::string_view id) const;
  const std::vector<double> &at(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id) != nullptr; }

  std::size_t size() const noexcept { return features_.size(); }
  bool empty() const noexcept { return features_.empty(); }
  std::size_t width() const noexcept { return width_; }
  const std::vector<std::string> &ids() const noexcept { return order_; }

  bool operator==(const ContextFeatureSet &other) const;

 private:
  std::unordered_map<std::string, std::vector<double>> features_;
  std::vector<std::string> order_;
  std::size_t width_ = 0;
};

/// Reads a `drug_id,smiles` CSV and reports every row's outcome.
std::vector<RowDiagnostic> featurize_file(const std::filesystem::path &path);

/// Loads a `drug_id,smiles` CSV. Unparseable rows are dropped and counted.
/// Errors: FileNotFound, MalformedHeader, DuplicateKey, EmptyDataset.
DrugFeatureSet load_drug_set(const std::filesystem::path &path);

/// Loads a `context_id,f_1,...,f_k` CSV.
/// Errors: FileNotFound, MalformedHeader, RaggedRows, DuplicateKey,
/// EmptyDataset.
ContextFeatureSet load_context_set(const std::filesystem::path &path);

}  // namespace pairscore::dataset

#endif  // PAIRSCORE_DATASET_FEATURE_SETS_HPP_
