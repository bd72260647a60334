//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "pairscore/pipeline/protocol.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <thread>

#include "pairscore/error.hpp"

namespace pairscore::pipeline {

RunResult train_and_score(const dataset::DrugFeatureSet &drugs,
                          const dataset::ContextFeatureSet &contexts,
                          const dataset::LabeledTriples &train,
                          const dataset::LabeledTriples &test, std::string_view model_name,
                          const neuro::OptimizerConfig &cfg, const RunSeeds &seeds,
                          const nlohmann::json &overrides) {
  nlohmann::json merged = overrides.is_null() ? nlohmann::json::object() : overrides;
  if (!merged.contains("dropout")) merged["dropout"] = cfg.dropout_rate;
  const std::size_t k = contexts.empty() ? 1 : contexts.width();
  models::PairScorer model = models::build_model(model_name, k, merged, seeds.init);
  model.check_widths(drugs, contexts);

  batch::BatchGenerator gen(train, drugs, contexts, cfg.batch_size, model.wiring().flags(),
                            seeds.shuffle);
  auto trace = pipeline::train(model, gen, cfg, seeds.dropout);
  Predictions test_pred = predict(model, test, drugs, contexts, cfg.batch_size);
  MetricsReport metrics = evaluate_scores(test_pred.scores, test_pred.labels);
  return RunResult { std::move(model), std::move(trace), std::move(test_pred), metrics };
}

RunResult run_split(const dataset::DrugFeatureSet &drugs,
                    const dataset::ContextFeatureSet &contexts,
                    const dataset::LabeledTriples &triples, std::string_view model_name,
                    double train_size, const neuro::OptimizerConfig &cfg,
                    std::uint64_t run_seed, const nlohmann::json &overrides) {
  const RunSeeds seeds = RunSeeds::from(run_seed);
  auto [train, test] = dataset::train_test_split(triples, train_size, seeds.split);
  return train_and_score(drugs, contexts, train, test, model_name, cfg, seeds, overrides);
}

MetricSummary summarize(std::string metric, std::vector<double> values) {
  MetricSummary s;
  s.metric = std::move(metric);
  const double n = static_cast<double>(values.size());
  if (values.size() < 2) throw Error(ErrorCode::InvalidArgument, "standard error needs >= 2 values");
  double sum = 0.0;
  for (double v: values) sum += v;
  s.mean = sum / n;
  double ss = 0.0;
  for (double v: values) ss += (v - s.mean) * (v - s.mean);
  s.standard_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  s.values = std::move(values);
  return s;
}

ProtocolReport evaluate_protocol(const dataset::DrugFeatureSet &drugs,
                                 const dataset::ContextFeatureSet &contexts,
                                 const dataset::LabeledTriples &triples,
                                 std::string_view model_name, const ProtocolOptions &options) {
  if (options.n_repeats < 2) {
    throw Error(ErrorCode::InvalidArgument, "n_repeats must be >= 2 for a standard error");
  }
  options.optimizer.validate();
  const std::size_t n = options.n_repeats;
  std::vector<std::optional<MetricsReport>> results(n);
  std::vector<std::exception_ptr> failures(n);
  std::atomic<std::size_t> next { 0 };

  auto worker = [&] {
    for (std::size_t r = next++; r < n; r = next++) {
      try {
        results[r] = run_split(drugs, contexts, triples, model_name, options.train_size,
                               options.optimizer, options.base_seed + r, options.overrides)
                         .metrics;
      } catch (...) {
        failures[r] = std::current_exception();
      }
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, n));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto &t: pool) t.join();
  }
  for (const auto &f: failures) {
    if (f) std::rethrow_exception(f);
  }

  ProtocolReport report;
  std::vector<double> a, p, f;
  for (const auto &r: results) {
    report.repeats.push_back(*r);
    a.push_back(r->auroc);
    p.push_back(r->aupr);
    f.push_back(r->f1);
  }
  report.metrics.push_back(summarize("auroc", std::move(a)));
  report.metrics.push_back(summarize("aupr", std::move(p)));
  report.metrics.push_back(summarize("f1", std::move(f)));
  return report;
}

}  // namespace pairscore::pipeline
