//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "pairscore/dataset/triples.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>

#include "pairscore/csv.hpp"
#include "pairscore/error.hpp"
#include "pairscore/rng.hpp"

namespace pairscore::dataset {

std::string LabeledTriples::key(std::string_view a, std::string_view b,
                                std::string_view c) {
  std::string k;
  k.reserve(a.size() + b.size() + c.size() + 2);
  k.append(a).push_back('\x1f');
  k.append(b).push_back('\x1f');
  k.append(c);
  return k;
}

void LabeledTriples::add(std::string drug_1, std::string drug_2,
                         std::string context, double label) {
  if (!(label >= 0.0 && label <= 1.0)) {
    throw Error(ErrorCode::LabelOutOfRange,
                "label " + csv::format_real(label) + " for (" + drug_1 + ", "
                    + drug_2 + ", " + context + ")");
  }
  if (!keys_.insert(key(drug_1, drug_2, context)).second) {
    throw Error(ErrorCode::DuplicateTriple,
                "(" + drug_1 + ", " + drug_2 + ", " + context + ")");
  }
  drug_1_.push_back(std::move(drug_1));
  drug_2_.push_back(std::move(drug_2));
  context_.push_back(std::move(context));
  labels_.push_back(label);
}

Triple LabeledTriples::row(std::size_t i) const {
  return Triple { drug_1_[i], drug_2_[i], context_[i], labels_[i] };
}

bool LabeledTriples::contains(std::string_view drug_1, std::string_view drug_2,
                              std::string_view context) const {
  return keys_.contains(key(drug_1, drug_2, context));
}

LabeledTriples LabeledTriples::subset(std::span<const std::size_t> indices) const {
  LabeledTriples out;
  for (std::size_t i: indices) out.add(drug_1_.at(i), drug_2_.at(i), context_.at(i), labels_.at(i));
  return out;
}

std::vector<std::string> LabeledTriples::drugs() const {
  std::set<std::string> s(drug_1_.begin(), drug_1_.end());
  s.insert(drug_2_.begin(), drug_2_.end());
  return { s.begin(), s.end() };
}

std::vector<std::string> LabeledTriples::contexts() const {
  std::set<std::string> s(context_.begin(), context_.end());
  return { s.begin(), s.end() };
}

bool LabeledTriples::operator==(const LabeledTriples &other) const {
  return drug_1_ == other.drug_1_ && drug_2_ == other.drug_2_
         && context_ == other.context_ && labels_ == other.labels_;
}

LabeledTriples load_triples(const std::filesystem::path &path) {
  const csv::Table table = csv::read(path);
  if (table.header.empty()) throw Error(ErrorCode::EmptyDataset, path.string() + ": empty file");
  const std::vector<std::string> expected = { "drug_1", "drug_2", "context", "label" };
  if (table.header != expected) {
    throw Error(ErrorCode::MalformedHeader,
                path.string() + ": expected header 'drug_1,drug_2,context,label'");
  }
  LabeledTriples y;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto &row = table.rows[r];
    if (row.size() != 4) {
      throw Error(ErrorCode::RaggedRows,
                  path.string() + ":" + std::to_string(table.lines[r])
                      + ": expected 4 fields");
    }
    y.add(row[0], row[1], row[2], csv::parse_real(row[3], "label"));
  }
  return y;
}

void write_triples(const std::filesystem::path &path, const LabeledTriples &y) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << "drug_1,drug_2,context,label\n";
  for (std::size_t i = 0; i < y.size(); ++i) {
    out << csv::escape(y.drug_1(i)) << ',' << csv::escape(y.drug_2(i)) << ','
        << csv::escape(y.context(i)) << ',' << csv::format_real(y.label(i)) << '\n';
  }
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

std::pair<LabeledTriples, LabeledTriples>
train_test_split(const LabeledTriples &y, double train_size, std::uint64_t seed) {
  if (!(train_size > 0.0 && train_size < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "train_size must lie in (0, 1)");
  }
  const std::size_t n = y.size();
  const auto n_train = static_cast<std::size_t>(std::llround(train_size * static_cast<double>(n)));
  if (n < 2 || n_train == 0 || n_train >= n) {
    throw Error(ErrorCode::DegenerateSplit,
                std::to_string(n) + " triples at train_size "
                    + csv::format_real(train_size) + " leave a side empty");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t { 0 });
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(order));

  std::vector<std::size_t> train(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  std::vector<std::size_t> test(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return { y.subset(train), y.subset(test) };
}

LabeledTriples sample_negatives(const LabeledTriples &y, std::uint64_t seed) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y.label(i) != 1.0) {
      throw Error(ErrorCode::InvalidArgument,
                  "negative sampling expects only positive labels (row "
                      + std::to_string(i) + ")");
    }
  }
  const std::vector<std::string> drugs = y.drugs();
  const std::vector<std::string> contexts = y.contexts();
  const std::size_t n_drugs = drugs.size();

  std::map<std::string, std::size_t> drug_index;
  for (std::size_t i = 0; i < n_drugs; ++i) drug_index[drugs[i]] = i;
  std::map<std::string, std::size_t> context_index;
  for (std::size_t i = 0; i < contexts.size(); ++i) context_index[contexts[i]] = i;

  // Occupied unordered pairs per context, as (context, lo, hi).
  using PairKey = std::tuple<std::size_t, std::size_t, std::size_t>;
  std::set<PairKey> occupied;
  const auto pair_key = [](std::size_t c, std::size_t a, std::size_t b) {
    return PairKey { c, std::min(a, b), std::max(a, b) };
  };
  for (std::size_t i = 0; i < y.size(); ++i) {
    const std::size_t a = drug_index[y.drug_1(i)];
    const std::size_t b = drug_index[y.drug_2(i)];
    if (a != b) occupied.insert(pair_key(context_index[y.context(i)], a, b));
  }

  const std::size_t pairs_per_context = n_drugs * (n_drugs - (n_drugs > 0 ? 1 : 0)) / 2;
  const std::size_t space = pairs_per_context * contexts.size();
  const std::size_t free = space - occupied.size();
  if (n_drugs < 2 || free < y.size()) {
    throw Error(ErrorCode::InsufficientSpace,
                std::to_string(free) + " collision-free candidates for "
                    + std::to_string(y.size()) + " negatives");
  }

  LabeledTriples out = y;
  Rng rng(seed);
  std::size_t drawn = 0;
  while (drawn < y.size()) {
    const std::size_t a = rng.index(n_drugs);
    const std::size_t b = rng.index(n_drugs);
    const std::size_t c = rng.index(contexts.size());
    if (a == b) continue;
    if (!occupied.insert(pair_key(c, a, b)).second) continue;
    out.add(drugs[a], drugs[b], contexts[c], 0.0);
    ++drawn;
  }
  return out;
}

}  // namespace pairscore::dataset
