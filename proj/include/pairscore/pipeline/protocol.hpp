//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PAIRSCORE_PIPELINE_PROTOCOL_HPP_
#define PAIRSCORE_PIPELINE_PROTOCOL_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "pairscore/dataset/feature_sets.hpp"
#include "pairscore/dataset/triples.hpp"
#include "pairscore/models/pair_scorer.hpp"
#include "pairscore/neuro/adam.hpp"
#include "pairscore/pipeline/metrics.hpp"
#include "pairscore/pipeline/train.hpp"

namespace pairscore::pipeline {

/// Seeds of one split/train/score run, all derived from a single run seed.
struct RunSeeds {
  std::uint64_t split;
  std::uint64_t init;
  std::uint64_t shuffle;
  std::uint64_t dropout;

  static RunSeeds from(std::uint64_t run_seed) noexcept {
    return { run_seed, Rng::derive(run_seed, 1), Rng::derive(run_seed, 2), Rng::derive(run_seed, 3) };
  }
};

struct RunResult {
  models::PairScorer model;
  std::vector<EpochLoss> trace;
  Predictions test;
  MetricsReport metrics;
};

/// Builds `model_name` (dropout taken from cfg), trains it on `train` and
/// scores `test`.
RunResult train_and_score(const dataset::DrugFeatureSet &drugs,
                          const dataset::ContextFeatureSet &contexts,
                          const dataset::LabeledTriples &train,
                          const dataset::LabeledTriples &test, std::string_view model_name,
                          const neuro::OptimizerConfig &cfg, const RunSeeds &seeds,
                          const nlohmann::json &overrides = nlohmann::json::object());

/// Splits with seeds.split, then train_and_score.
RunResult run_split(const dataset::DrugFeatureSet &drugs,
                    const dataset::ContextFeatureSet &contexts,
                    const dataset::LabeledTriples &triples, std::string_view model_name,
                    double train_size, const neuro::OptimizerConfig &cfg,
                    std::uint64_t run_seed,
                    const nlohmann::json &overrides = nlohmann::json::object());

struct MetricSummary {
  std::string metric;
  double mean = 0.0;
  double standard_error = 0.0;  // sample standard deviation / sqrt(n)
  std::vector<double> values;
};

struct ProtocolOptions {
  std::size_t n_repeats = 10;
  double train_size = 0.8;
  std::uint64_t base_seed = 0;
  neuro::OptimizerConfig optimizer;
  nlohmann::json overrides = nlohmann::json::object();
  std::size_t jobs = 1;  // worker threads; results do not depend on it
};

struct ProtocolReport {
  std::vector<MetricSummary> metrics;  // auroc, aupr, f1
  std::vector<MetricsReport> repeats;
};

/// Repeat r splits with seed base_seed + r, trains, scores the test part and
/// computes metrics; reports mean and standard error per metric.
/// Errors: InvalidArgument (n_repeats < 2), plus everything the runs raise.
ProtocolReport evaluate_protocol(const dataset::DrugFeatureSet &drugs,
                                 const dataset::ContextFeatureSet &contexts,
                                 const dataset::LabeledTriples &triples,
                                 std::string_view model_name, const ProtocolOptions &options);

MetricSummary summarize(std::string metric, std::vector<double> values);

}  // namespace pairscore::pipeline

#endif  // PAIRSCORE_PIPELINE_PROTOCOL_HPP_
