//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "pairscore/dataset/feature_sets.hpp"

#include "pairscore/csv.hpp"
#include "pairscore/error.hpp"
#include "pairscore/molio/features.hpp"

namespace pairscore::dataset {
namespace {
void require_header(const csv::Table &table,
                    const std::vector<std::string> &expected,
                    const std::filesystem::path &path) {
  if (table.header.empty()) throw Error(ErrorCode::EmptyDataset, path.string() + ": empty file");
  if (table.header != expected) {
    std::string want;
    for (const auto &h: expected) want += (want.empty() ? "" : ",") + h;
    throw Error(ErrorCode::MalformedHeader,
                path.string() + ": expected header '" + want + "'");
  }
}
}  // namespace

DrugRecord featurize(std::string smiles) {
  DrugRecord record;
  record.graph = molio::parse_smiles(smiles);
  record.fingerprint = molio::morgan_fingerprint(record.graph);
  record.atom_features = molio::atom_features(record.graph);
  record.bond_features = molio::bond_features(record.graph);
  record.smiles = std::move(smiles);
  return record;
}

void DrugFeatureSet::insert(std::string id, DrugRecord record) {
  if (records_.contains(id)) throw Error(ErrorCode::DuplicateKey, "drug '" + id + "'");
  order_.push_back(id);
  records_.emplace(std::move(id), std::move(record));
}

const DrugRecord *DrugFeatureSet::find(std::string_view id) const {
  auto it = records_.find(std::string(id));
  return it == records_.end() ? nullptr : &it->second;
}

const DrugRecord &DrugFeatureSet::at(std::string_view id) const {
  const DrugRecord *r = find(id);
  if (r == nullptr) {
    throw Error(ErrorCode::UnresolvableIdentifier, "drug '" + std::string(id) + "'");
  }
  return *r;
}

std::size_t DrugFeatureSet::fingerprint_width() const noexcept {
  return records_.empty() ? 0 : records_.begin()->second.fingerprint.size();
}

bool DrugFeatureSet::operator==(const DrugFeatureSet &other) const {
  if (order_ != other.order_ || dropped_ != other.dropped_) return false;
  for (const auto &id: order_) {
    const DrugRecord &a = at(id);
    const DrugRecord &b = other.at(id);
    if (a.smiles != b.smiles || a.graph != b.graph || a.fingerprint != b.fingerprint
        || a.atom_features != b.atom_features || a.bond_features != b.bond_features)
      return false;
  }
  return true;
}

void ContextFeatureSet::insert(std::string id, std::vector<double> features) {
  if (features.empty()) {
    throw Error(ErrorCode::InvalidArgument, "context '" + id + "' has no features");
  }
  if (features_.contains(id)) throw Error(ErrorCode::DuplicateKey, "context '" + id + "'");
  if (width_ == 0) {
    width_ = features.size();
  } else if (features.size() != width_) {
    throw Error(ErrorCode::RaggedRows,
                "context '" + id + "' has " + std::to_string(features.size())
                    + " features, expected " + std::to_string(width_));
  }
  order_.push_back(id);
  features_.emplace(std::move(id), std::move(features));
}

const std::vector<double> *ContextFeatureSet::find(std::string_view id) const {
  auto it = features_.find(std::string(id));
  return it == features_.end() ? nullptr : &it->second;
}

const std::vector<double> &ContextFeatureSet::at(std::string_view id) const {
  const auto *r = find(id);
  if (r == nullptr) {
    throw Error(ErrorCode::UnresolvableIdentifier, "context '" + std::string(id) + "'");
  }
  return *r;
}

bool ContextFeatureSet::operator==(const ContextFeatureSet &other) const {
  return order_ == other.order_ && features_ == other.features_;
}

std::vector<RowDiagnostic> featurize_file(const std::filesystem::path &path) {
  const csv::Table table = csv::read(path);
  require_header(table, { "drug_id", "smiles" }, path);

  std::vector<RowDiagnostic> out;
  out.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto &row = table.rows[r];
    if (row.size() != 2) {
      throw Error(ErrorCode::RaggedRows,
                  path.string() + ":" + std::to_string(table.lines[r])
                      + ": expected 2 fields");
    }
    RowDiagnostic diag;
    diag.drug_id = row[0];
    diag.smiles = row[1];
    try {
      const DrugRecord record = featurize(row[1]);
      diag.ok = true;
      diag.atoms = record.graph.atom_count();
      diag.bonds = record.graph.bond_count();
      diag.popcount = record.fingerprint.popcount();
    } catch (const Error &e) {
      diag.error = std::string(e.name());
      diag.message = e.detail();
    }
    out.push_back(std::move(diag));
  }
  return out;
}

DrugFeatureSet load_drug_set(const std::filesystem::path &path) {
  const csv::Table table = csv::read(path);
  require_header(table, { "drug_id", "smiles" }, path);

  DrugFeatureSet set;
  std::size_t dropped = 0;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto &row = table.rows[r];
    if (row.size() != 2) {
      throw Error(ErrorCode::RaggedRows,
                  path.string() + ":" + std::to_string(table.lines[r])
                      + ": expected 2 fields");
    }
    if (set.contains(row[0])) throw Error(ErrorCode::DuplicateKey, "drug '" + row[0] + "'");
    DrugRecord record;
    try {
      record = featurize(row[1]);
    } catch (const Error &) {
      ++dropped;
      continue;
    }
    set.insert(row[0], std::move(record));
  }
  set.set_dropped(dropped);
  if (set.empty()) throw Error(ErrorCode::EmptyDataset, path.string() + ": no usable drugs");
  return set;
}

ContextFeatureSet load_context_set(const std::filesystem::path &path) {
  const csv::Table table = csv::read(path);
  if (table.header.empty()) throw Error(ErrorCode::EmptyDataset, path.string() + ": empty file");
  if (table.header.size() < 2 || table.header[0] != "context_id") {
    throw Error(ErrorCode::MalformedHeader,
                path.string() + ": expected header 'context_id,f_1,...,f_k'");
  }
  ContextFeatureSet set;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto &row = table.rows[r];
    if (row.size() != table.header.size()) {
      throw Error(ErrorCode::RaggedRows,
                  path.string() + ":" + std::to_string(table.lines[r]) + ": "
                      + std::to_string(row.size() - 1) + " features, header declares "
                      + std::to_string(table.header.size() - 1));
    }
    std::vector<double> features;
    features.reserve(row.size() - 1);
    for (std::size_t c = 1; c < row.size(); ++c) {
      features.push_back(csv::parse_real(row[c], table.header[c]));
    }
    set.insert(row[0], std::move(features));
  }
  if (set.empty()) throw Error(ErrorCode::EmptyDataset, path.string() + ": no contexts");
  return set;
}

}  // namespace pairscore::dataset
