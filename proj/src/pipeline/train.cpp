//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "pairscore/pipeline/train.hpp"

#include <cmath>

#include "pairscore/error.hpp"
#include "pairscore/neuro/tape.hpp"

namespace pairscore::pipeline {

std::vector<EpochLoss> train(models::PairScorer &model, batch::BatchGenerator &gen,
                             const neuro::OptimizerConfig &cfg, std::uint64_t seed) {
  cfg.validate();
  std::vector<EpochLoss> trace;
  trace.reserve(cfg.epochs);
  neuro::AdamState state = neuro::AdamState::zeros_like(model.params());
  Rng rng(seed);
  for (std::size_t e = 0; e < cfg.epochs; ++e) {
    EpochLoss record;
    record.epoch = e;
    std::size_t seen = 0;
    gen.begin_epoch(e);
    while (auto batch = gen.next()) {
      neuro::Tape tape;
      const neuro::Var pred = model.forward(tape, *batch, true, rng);
      const neuro::Var loss = neuro::bce_loss(tape, pred, batch->labels);
      const double value = tape.value(loss)[0];
      if (!std::isfinite(value)) {
        throw Error(ErrorCode::NonFiniteLoss, "epoch " + std::to_string(e) + ", batch "
                                                  + std::to_string(record.batch_losses.size()));
      }
      const neuro::Gradients grads = neuro::backward(tape, loss, model.params());
      neuro::adam_step(model.params(), grads, state, cfg);
      record.batch_losses.push_back(value);
      record.batch_sizes.push_back(batch->size());
      record.cost += static_cast<double>(batch->size()) * value;
      seen += batch->size();
    }
    record.mean_loss = seen == 0 ? 0.0 : record.cost / static_cast<double>(seen);
    trace.push_back(std::move(record));
  }
  return trace;
}

Predictions predict(const models::PairScorer &model, batch::BatchGenerator &gen) {
  Predictions out;
  const bool was_shuffled = gen.shuffle();
  gen.set_shuffle(false);
  gen.begin_epoch(0);
  while (auto batch = gen.next()) {
    const auto scores = model.score(*batch);
    out.scores.insert(out.scores.end(), scores.begin(), scores.end());
    out.labels.insert(out.labels.end(), batch->labels.begin(), batch->labels.end());
    for (auto &id: batch->identifiers) out.identifiers.push_back(std::move(id));
  }
  gen.set_shuffle(was_shuffled);
  return out;
}

Predictions predict(const models::PairScorer &model, const dataset::LabeledTriples &triples,
                    const dataset::DrugFeatureSet &drugs,
                    const dataset::ContextFeatureSet &contexts, std::size_t batch_size) {
  model.check_widths(drugs, contexts);
  batch::BatchGenerator gen(triples, drugs, contexts, batch_size, model.wiring().flags(), 0, false);
  return predict(model, gen);
}

}  // namespace pairscore::pipeline
