//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PAIRSCORE_PIPELINE_TRAIN_HPP_
#define PAIRSCORE_PIPELINE_TRAIN_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pairscore/batch/generator.hpp"
#include "pairscore/dataset/triples.hpp"
#include "pairscore/models/pair_scorer.hpp"
#include "pairscore/neuro/adam.hpp"

namespace pairscore::pipeline {

/// Loss record of one training epoch.
struct EpochLoss {
  std::size_t epoch = 0;
  std::vector<double> batch_losses;   // mean BCE of each batch
  std::vector<std::size_t> batch_sizes;
  double cost = 0.0;       // L = sum over batches of B * mean loss
  double mean_loss = 0.0;  // L / |Y|
};

/// Fits `model` with Adam over `cfg.epochs` epochs of `gen` (epoch e uses the
/// generator's permutation for e). Dropout masks are drawn from `seed`.
/// Errors: NonFiniteLoss, plus model and batch errors.
std::vector<EpochLoss> train(models::PairScorer &model, batch::BatchGenerator &gen,
                             const neuro::OptimizerConfig &cfg, std::uint64_t seed);

/// Evaluation-mode predictions joined with their source rows.
struct Predictions {
  std::vector<dataset::Triple> identifiers;
  std::vector<double> labels;
  std::vector<double> scores;
};

/// Scores every triple of `gen` in one unshuffled pass.
Predictions predict(const models::PairScorer &model, batch::BatchGenerator &gen);

/// Convenience wrapper building an unshuffled generator with the model's
/// wiring.
Predictions predict(const models::PairScorer &model, const dataset::LabeledTriples &triples,
                    const dataset::DrugFeatureSet &drugs,
                    const dataset::ContextFeatureSet &contexts, std::size_t batch_size);

}  // namespace pairscore::pipeline

#endif  // PAIRSCORE_PIPELINE_TRAIN_HPP_
