//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "pairscore/batch/generator.hpp"

#include <algorithm>
#include <numeric>

#include "pairscore/error.hpp"
#include "pairscore/rng.hpp"

namespace pairscore::batch {
namespace {
void copy_fingerprint(const molio::Fingerprint &fp, std::span<double> row) {
  const auto bits = fp.bits();
  for (std::size_t i = 0; i < bits.size(); ++i) row[i] = bits[i];
}
}  // namespace

DrugPairBatch collate(const dataset::LabeledTriples &triples,
                      std::span<const std::size_t> rows,
                      const dataset::DrugFeatureSet &drugs,
                      const dataset::ContextFeatureSet &contexts,
                      const BatchFlags &flags) {
  const std::size_t b = rows.size();
  DrugPairBatch batch;
  batch.labels.reserve(b);
  batch.identifiers.reserve(b);

  std::vector<const dataset::DrugRecord *> left(b);
  std::vector<const dataset::DrugRecord *> right(b);
  for (std::size_t i = 0; i < b; ++i) {
    const std::size_t r = rows[i];
    left[i] = &drugs.at(triples.drug_1(r));
    right[i] = &drugs.at(triples.drug_2(r));
    batch.labels.push_back(triples.label(r));
    batch.identifiers.push_back(triples.row(r));
  }

  if (flags.context_features) {
    const std::size_t k = contexts.width();
    Tensor ctx({ b, k });
    for (std::size_t i = 0; i < b; ++i) {
      const auto &features = contexts.at(triples.context(rows[i]));
      std::copy(features.begin(), features.end(), ctx.row(i).begin());
    }
    batch.context_features = std::move(ctx);
  }

  if (flags.drug_features) {
    const std::size_t width = drugs.fingerprint_width();
    Tensor l({ b, width });
    Tensor r({ b, width });
    for (std::size_t i = 0; i < b; ++i) {
      copy_fingerprint(left[i]->fingerprint, l.row(i));
      copy_fingerprint(right[i]->fingerprint, r.row(i));
    }
    batch.drug_features_left = std::move(l);
    batch.drug_features_right = std::move(r);
  }

  if (flags.drug_molecules) {
    std::vector<GraphRef> refs(b);
    for (std::size_t i = 0; i < b; ++i) {
      refs[i] = GraphRef { &left[i]->graph, &left[i]->atom_features, &left[i]->bond_features };
    }
    batch.graphs_left = pack_graphs(refs);
    for (std::size_t i = 0; i < b; ++i) {
      refs[i] = GraphRef { &right[i]->graph, &right[i]->atom_features, &right[i]->bond_features };
    }
    batch.graphs_right = pack_graphs(refs);
  }
  return batch;
}

BatchGenerator::BatchGenerator(dataset::LabeledTriples triples,
                               const dataset::DrugFeatureSet &drugs,
                               const dataset::ContextFeatureSet &contexts,
                               std::size_t batch_size, BatchFlags flags,
                               std::uint64_t shuffle_seed, bool shuffle)
    : triples_(std::move(triples)), drugs_(&drugs), contexts_(&contexts),
      batch_size_(batch_size), flags_(flags), seed_(shuffle_seed),
      shuffle_(shuffle) {
  if (batch_size_ == 0) throw Error(ErrorCode::InvalidArgument, "batch_size must be >= 1");
  check_identifiers();
  begin_epoch(0);
}

void BatchGenerator::set_triples(dataset::LabeledTriples triples) {
  triples_ = std::move(triples);
  check_identifiers();
  begin_epoch(0);
}

void BatchGenerator::check_identifiers() const {
  for (std::size_t i = 0; i < triples_.size(); ++i) {
    for (const std::string *id: { &triples_.drug_1(i), &triples_.drug_2(i) }) {
      if (!drugs_->contains(*id)) {
        throw Error(ErrorCode::UnresolvableIdentifier, "drug '" + *id + "'");
      }
    }
    if (flags_.context_features && !contexts_->contains(triples_.context(i))) {
      throw Error(ErrorCode::UnresolvableIdentifier,
                  "context '" + triples_.context(i) + "'");
    }
  }
}

void BatchGenerator::begin_epoch(std::uint64_t epoch) {
  order_.resize(triples_.size());
  std::iota(order_.begin(), order_.end(), std::size_t { 0 });
  if (shuffle_) {
    Rng rng(Rng::derive(seed_, epoch));
    rng.shuffle(std::span<std::size_t>(order_));
  }
  cursor_ = 0;
}

std::optional<DrugPairBatch> BatchGenerator::next() {
  if (cursor_ >= order_.size()) return std::nullopt;
  const std::size_t end = std::min(order_.size(), cursor_ + batch_size_);
  std::span<const std::size_t> rows(order_.data() + cursor_, end - cursor_);
  cursor_ = end;
  return collate(triples_, rows, *drugs_, *contexts_, flags_);
}

std::vector<DrugPairBatch> BatchGenerator::epoch(std::uint64_t epoch) {
  begin_epoch(epoch);
  std::vector<DrugPairBatch> out;
  out.reserve(batches_per_epoch());
  while (auto b = next()) out.push_back(std::move(*b));
  return out;
}

std::size_t BatchGenerator::batches_per_epoch() const noexcept {
  return (triples_.size() + batch_size_ - 1) / batch_size_;
}

}  // namespace pairscore::batch
