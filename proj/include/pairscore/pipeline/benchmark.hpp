//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PAIRSCORE_PIPELINE_BENCHMARK_HPP_
#define PAIRSCORE_PIPELINE_BENCHMARK_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pairscore/models/pair_scorer.hpp"
#include "pairscore/neuro/adam.hpp"
#include "pairscore/pipeline/synthetic.hpp"

namespace pairscore::pipeline {

/// Shape of the synthetic benchmark workload.
struct WorkloadShape {
  std::size_t n_drugs = 512;
  std::size_t n_contexts = 16;
  std::size_t context_width = 64;
};

struct BenchmarkRecord {
  std::string model;
  std::size_t batch_size = 0;
  std::size_t n_pairs = 0;
  std::size_t repeats = 0;
  double seconds = 0.0;       // mean over repeats
  std::vector<double> runs;  // per-repeat seconds
};

/// Times `repeats` full training epochs over `workload` at `batch_size`
/// after one untimed warm-up epoch; monotonic clock.
BenchmarkRecord benchmark_epoch(const SyntheticData &workload, std::string_view model_name,
                                std::size_t batch_size, std::size_t repeats = 10,
                                std::uint64_t seed = 0);

/// Generates a workload of `n_pairs` triples first.
BenchmarkRecord benchmark_epoch(std::string_view model_name, std::size_t n_pairs,
                                std::size_t batch_size, std::size_t repeats = 10,
                                std::uint64_t seed = 0, const WorkloadShape &shape = {});

/// Measured evaluation-mode cost of scoring one full batch.
struct InferenceCalibration {
  std::string model;
  std::size_t batch_size = 0;
  double seconds_per_batch = 0.0;
};

InferenceCalibration calibrate_inference(const SyntheticData &workload,
                                         std::string_view model_name, std::size_t batch_size,
                                         std::size_t repeats = 10, std::uint64_t seed = 0);

/// (n_drugs^2 / batch_size) * seconds_per_batch: one context, all ordered
/// pairs. Errors: MissingCalibration.
double project_inference(const std::optional<InferenceCalibration> &calibration,
                         std::size_t n_drugs);

/// Wall-clock seconds to score all n^2 ordered pairs of the first `n_drugs`
/// drugs of `workload` in its first context.
double measure_all_pairs(const models::PairScorer &model, const SyntheticData &workload,
                         std::size_t n_drugs, std::size_t batch_size);

/// Least-squares fit of t = c * n^2 through the origin.
struct QuadraticFit {
  double c = 0.0;
  double r_squared = 0.0;
};

QuadraticFit fit_quadratic(std::span<const double> n, std::span<const double> t);

}  // namespace pairscore::pipeline

#endif  // PAIRSCORE_PIPELINE_BENCHMARK_HPP_
