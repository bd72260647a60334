//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "pairscore/pipeline/benchmark.hpp"

#include <chrono>
#include <numeric>

#include "pairscore/error.hpp"
#include "pairscore/pipeline/train.hpp"

namespace pairscore::pipeline {
namespace {
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

models::PairScorer workload_model(const SyntheticData &workload, std::string_view name,
                                  std::uint64_t seed) {
  models::PairScorer model = models::build_model(name, workload.contexts.width(),
                                                 nlohmann::json::object(), seed);
  model.check_widths(workload.drugs, workload.contexts);
  return model;
}
}  // namespace

BenchmarkRecord benchmark_epoch(const SyntheticData &workload, std::string_view model_name,
                                std::size_t batch_size, std::size_t repeats, std::uint64_t seed) {
  if (repeats == 0) throw Error(ErrorCode::InvalidArgument, "repeats must be >= 1");
  models::PairScorer model = workload_model(workload, model_name, seed);
  neuro::OptimizerConfig cfg;
  cfg.batch_size = batch_size;
  cfg.epochs = 1;
  batch::BatchGenerator gen(workload.triples, workload.drugs, workload.contexts, batch_size,
                            model.wiring().flags(), Rng::derive(seed, 2));

  BenchmarkRecord record { std::string(model_name), batch_size, workload.triples.size(), repeats, 0.0, {} };
  train(model, gen, cfg, seed);  // warm-up
  for (std::size_t r = 0; r < repeats; ++r) {
    const auto start = Clock::now();
    train(model, gen, cfg, Rng::derive(seed, r + 10));
    record.runs.push_back(seconds_since(start));
  }
  record.seconds = std::accumulate(record.runs.begin(), record.runs.end(), 0.0)
                   / static_cast<double>(repeats);
  return record;
}

BenchmarkRecord benchmark_epoch(std::string_view model_name, std::size_t n_pairs,
                                std::size_t batch_size, std::size_t repeats, std::uint64_t seed,
                                const WorkloadShape &shape) {
  const SyntheticData workload = synthetic_workload(shape.n_drugs, shape.n_contexts,
                                                    shape.context_width, n_pairs, seed);
  return benchmark_epoch(workload, model_name, batch_size, repeats, seed);
}

InferenceCalibration calibrate_inference(const SyntheticData &workload,
                                         std::string_view model_name, std::size_t batch_size,
                                         std::size_t repeats, std::uint64_t seed) {
  if (repeats == 0 || batch_size == 0) {
    throw Error(ErrorCode::InvalidArgument, "repeats and batch_size must be >= 1");
  }
  if (workload.triples.size() < batch_size) {
    throw Error(ErrorCode::InvalidArgument, "calibration workload is smaller than one batch");
  }
  const models::PairScorer model = workload_model(workload, model_name, seed);
  std::vector<std::size_t> rows(batch_size);
  std::iota(rows.begin(), rows.end(), std::size_t { 0 });
  const batch::DrugPairBatch b = batch::collate(workload.triples, rows, workload.drugs,
                                                workload.contexts, model.wiring().flags());
  model.score(b);  // warm-up
  const auto start = Clock::now();
  for (std::size_t r = 0; r < repeats; ++r) model.score(b);
  return { std::string(model_name), batch_size, seconds_since(start) / static_cast<double>(repeats) };
}

double project_inference(const std::optional<InferenceCalibration> &calibration,
                         std::size_t n_drugs) {
  if (!calibration || calibration->batch_size == 0 || !(calibration->seconds_per_batch > 0.0)) {
    throw Error(ErrorCode::MissingCalibration, "no per-batch inference time measured");
  }
  const double n = static_cast<double>(n_drugs);
  return n * n / static_cast<double>(calibration->batch_size) * calibration->seconds_per_batch;
}

double measure_all_pairs(const models::PairScorer &model, const SyntheticData &workload,
                         std::size_t n_drugs, std::size_t batch_size) {
  const auto &ids = workload.drugs.ids();
  if (n_drugs > ids.size() || workload.contexts.empty()) {
    throw Error(ErrorCode::InvalidArgument, "workload has too few drugs or no context");
  }
  const std::string &context = workload.contexts.ids().front();
  dataset::LabeledTriples pairs;
  for (std::size_t a = 0; a < n_drugs; ++a) {
    for (std::size_t b = 0; b < n_drugs; ++b) pairs.add(ids[a], ids[b], context, 0.0);
  }
  batch::BatchGenerator gen(std::move(pairs), workload.drugs, workload.contexts, batch_size,
                            model.wiring().flags(), 0, false);
  const auto start = Clock::now();
  while (auto b = gen.next()) model.score(*b);
  return seconds_since(start);
}

QuadraticFit fit_quadratic(std::span<const double> n, std::span<const double> t) {
  if (n.size() != t.size() || n.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "fit needs >= 2 paired points");
  }
  double sxx = 0.0;
  double sxy = 0.0;
  double mean_t = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double x = n[i] * n[i];
    sxx += x * x;
    sxy += x * t[i];
    mean_t += t[i];
  }
  mean_t /= static_cast<double>(t.size());
  QuadraticFit fit;
  fit.c = sxy / sxx;
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double r = t[i] - fit.c * n[i] * n[i];
    ss_res += r * r;
    ss_tot += (t[i] - mean_t) * (t[i] - mean_t);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 0.0;
  return fit;
}

}  // namespace pairscore::pipeline
