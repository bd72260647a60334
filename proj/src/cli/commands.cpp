//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "pairscore/cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pairscore/csv.hpp"
#include "pairscore/dataset/feature_sets.hpp"
#include "pairscore/dataset/triples.hpp"
#include "pairscore/error.hpp"
#include "pairscore/models/pair_scorer.hpp"
#include "pairscore/pipeline/benchmark.hpp"
#include "pairscore/pipeline/protocol.hpp"
#include "pairscore/pipeline/train.hpp"

namespace pairscore::cli {
namespace {
using Row = std::vector<std::string>;

void require_path(const std::filesystem::path &p, std::string_view flag) {
  if (p.empty()) throw Error(ErrorCode::InvalidArgument, "missing " + std::string(flag));
}

void write_csv(const std::filesystem::path &path, const Row &header, const std::vector<Row> &rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  auto line = [&](const Row &r) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv::escape(r[i]);
    out << '\n';
  };
  line(header);
  for (const Row &r: rows) line(r);
  if (!out) throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

nlohmann::json overrides_of(const RunConfig &cfg) {
  if (cfg.hyperparameters.empty()) return nlohmann::json::object();
  try {
    return nlohmann::json::parse(cfg.hyperparameters);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::InvalidArgument, std::string("--hyper: ") + e.what());
  }
}

void write_predictions(const std::filesystem::path &path, const pipeline::Predictions &p) {
  std::vector<Row> rows;
  rows.reserve(p.scores.size());
  for (std::size_t i = 0; i < p.scores.size(); ++i) {
    const auto &id = p.identifiers[i];
    rows.push_back({ id.drug_1, id.drug_2, id.context, csv::format_real(p.labels[i]),
                     csv::format_real(p.scores[i]) });
  }
  write_csv(path, { "drug_1", "drug_2", "context", "label", "prediction" }, rows);
}

void write_single_metrics(const std::filesystem::path &path, const pipeline::MetricsReport &m) {
  // A single run has no standard error; the field is left empty.
  write_csv(path, { "metric", "mean", "stderr" },
            { { "auroc", csv::format_real(m.auroc), "" },
              { "aupr", csv::format_real(m.aupr), "" },
              { "f1", csv::format_real(m.f1), "" } });
}

struct Inputs {
  dataset::DrugFeatureSet drugs;
  dataset::ContextFeatureSet contexts;
  dataset::LabeledTriples triples;
};

Inputs load_inputs(const RunConfig &cfg) {
  require_path(cfg.drugs, "--drugs");
  require_path(cfg.contexts, "--contexts");
  require_path(cfg.triples, "--triples");
  return { dataset::load_drug_set(cfg.drugs), dataset::load_context_set(cfg.contexts),
           dataset::load_triples(cfg.triples) };
}

pipeline::Predictions score_checkpoint(const RunConfig &cfg, const Inputs &in) {
  require_path(cfg.checkpoint, "--checkpoint");
  const models::PairScorer model = models::load_model(cfg.checkpoint);
  return pipeline::predict(model, in.triples, in.drugs, in.contexts, cfg.optimizer.batch_size);
}

}  // namespace

void cmd_featurize(const RunConfig &cfg) {
  require_path(cfg.drugs, "--drugs");
  require_path(cfg.out, "--out");
  const auto diagnostics = dataset::featurize_file(cfg.drugs);
  std::vector<Row> rows;
  for (const auto &d: diagnostics) {
    rows.push_back({ d.drug_id, d.ok ? "ok" : d.error, std::to_string(d.atoms),
                     std::to_string(d.bonds), std::to_string(d.popcount), d.message });
  }
  write_csv(cfg.out, { "drug_id", "status", "n_atoms", "n_bonds", "popcount", "message" }, rows);
}

void cmd_split(const RunConfig &cfg) {
  require_path(cfg.triples, "--triples");
  require_path(cfg.out_train, "--out-train");
  require_path(cfg.out_test, "--out-test");
  const auto y = dataset::load_triples(cfg.triples);
  const auto [train, test] = dataset::train_test_split(y, cfg.train_size, cfg.seed);
  dataset::write_triples(cfg.out_train, train);
  dataset::write_triples(cfg.out_test, test);
}

void cmd_negatives(const RunConfig &cfg) {
  require_path(cfg.triples, "--triples");
  require_path(cfg.out, "--out");
  dataset::write_triples(cfg.out, dataset::sample_negatives(dataset::load_triples(cfg.triples), cfg.seed));
}

void cmd_train(const RunConfig &cfg) {
  require_path(cfg.checkpoint, "--checkpoint");
  const Inputs in = load_inputs(cfg);
  nlohmann::json overrides = overrides_of(cfg);
  if (!overrides.contains("dropout")) overrides["dropout"] = cfg.optimizer.dropout_rate;
  const auto seeds = pipeline::RunSeeds::from(cfg.seed);
  models::PairScorer model = models::build_model(cfg.model, in.contexts.width(), overrides, seeds.init);
  model.check_widths(in.drugs, in.contexts);
  batch::BatchGenerator gen(in.triples, in.drugs, in.contexts, cfg.optimizer.batch_size,
                            model.wiring().flags(), seeds.shuffle);
  const auto trace = pipeline::train(model, gen, cfg.optimizer, seeds.dropout);
  models::save_model(cfg.checkpoint, model);
  if (!cfg.loss_trace.empty()) {
    std::vector<Row> rows;
    for (const auto &e: trace) {
      rows.push_back({ std::to_string(e.epoch), csv::format_real(e.mean_loss), csv::format_real(e.cost) });
    }
    write_csv(cfg.loss_trace, { "epoch", "mean_loss", "cost" }, rows);
  }
}

void cmd_evaluate(const RunConfig &cfg) {
  require_path(cfg.metrics, "--metrics");
  const Inputs in = load_inputs(cfg);
  if (!cfg.checkpoint.empty()) {
    const auto p = score_checkpoint(cfg, in);
    write_single_metrics(cfg.metrics, pipeline::evaluate_scores(p.scores, p.labels));
    if (!cfg.predictions.empty()) write_predictions(cfg.predictions, p);
    return;
  }
  if (cfg.n_repeats <= 1) {
    const auto r = pipeline::run_split(in.drugs, in.contexts, in.triples, cfg.model, cfg.train_size,
                                       cfg.optimizer, cfg.seed, overrides_of(cfg));
    write_single_metrics(cfg.metrics, r.metrics);
    if (!cfg.predictions.empty()) write_predictions(cfg.predictions, r.test);
    return;
  }
  pipeline::ProtocolOptions options;
  options.n_repeats = cfg.n_repeats;
  options.train_size = cfg.train_size;
  options.base_seed = cfg.seed;
  options.optimizer = cfg.optimizer;
  options.overrides = overrides_of(cfg);
  options.jobs = cfg.jobs;
  const auto report = pipeline::evaluate_protocol(in.drugs, in.contexts, in.triples, cfg.model, options);
  std::vector<Row> rows;
  for (const auto &m: report.metrics) {
    rows.push_back({ m.metric, csv::format_real(m.mean), csv::format_real(m.standard_error) });
  }
  write_csv(cfg.metrics, { "metric", "mean", "stderr" }, rows);
  if (!cfg.predictions.empty()) {
    const auto first = pipeline::run_split(in.drugs, in.contexts, in.triples, cfg.model, cfg.train_size,
                                           cfg.optimizer, cfg.seed, options.overrides);
    write_predictions(cfg.predictions, first.test);
  }
}

void cmd_predict(const RunConfig &cfg) {
  require_path(cfg.out, "--out");
  const Inputs in = load_inputs(cfg);
  write_predictions(cfg.out, score_checkpoint(cfg, in));
}

void cmd_benchmark(const RunConfig &cfg) {
  require_path(cfg.out, "--out");
  const pipeline::WorkloadShape shape;
  const auto workload = pipeline::synthetic_workload(shape.n_drugs, shape.n_contexts,
                                                     shape.context_width, cfg.n_pairs, cfg.seed);
  std::vector<Row> rows;
  for (const auto &name: cfg.models) {
    for (std::size_t b: cfg.batch_sizes) {
      const auto r = pipeline::benchmark_epoch(workload, name, b, cfg.repeats, cfg.seed);
      rows.push_back({ r.model, std::to_string(r.batch_size), std::to_string(r.n_pairs),
                       csv::format_real(r.seconds) });
    }
  }
  write_csv(cfg.out, { "model", "batch_size", "n_pairs", "seconds" }, rows);

  if (!cfg.inference_out.empty()) {
    std::vector<Row> proj;
    for (const auto &name: cfg.models) {
      const auto cal = pipeline::calibrate_inference(workload, name, cfg.inference_batch, cfg.repeats, cfg.seed);
      for (std::size_t n: cfg.drug_counts) {
        proj.push_back({ name, std::to_string(n), std::to_string(cfg.inference_batch),
                         csv::format_real(pipeline::project_inference(cal, n)) });
      }
    }
    write_csv(cfg.inference_out, { "model", "n_drugs", "batch_size", "seconds" }, proj);
  }
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  RunConfig cfg;
  CLI::App app { "Drug pair scoring: featurize, split, train, evaluate, benchmark" };
  app.set_config("--config", "", "Key-value config file; command-line flags take precedence");
  app.require_subcommand(1);

  auto paths = [&](CLI::App *sub, bool drugs, bool contexts, bool triples) {
    if (drugs) sub->add_option("--drugs", cfg.drugs, "drug_id,smiles CSV");
    if (contexts) sub->add_option("--contexts", cfg.contexts, "context_id,f_1..f_k CSV");
    if (triples) sub->add_option("--triples", cfg.triples, "drug_1,drug_2,context,label CSV");
  };
  auto training = [&](CLI::App *sub) {
    sub->add_option("--model", cfg.model, "deepddi|deepsynergy|matchmaker|epgcnds|deepdds");
    sub->add_option("--hyper", cfg.hyperparameters, "JSON object of model hyperparameter overrides");
    sub->add_option("--epochs", cfg.optimizer.epochs);
    sub->add_option("--batch-size", cfg.optimizer.batch_size);
    sub->add_option("--learning-rate", cfg.optimizer.learning_rate);
    sub->add_option("--weight-decay", cfg.optimizer.weight_decay);
    sub->add_option("--beta1", cfg.optimizer.beta1);
    sub->add_option("--beta2", cfg.optimizer.beta2);
    sub->add_option("--epsilon", cfg.optimizer.epsilon);
    sub->add_option("--dropout", cfg.optimizer.dropout_rate);
    sub->add_option("--seed", cfg.seed);
  };

  auto *featurize = app.add_subcommand("featurize", "Parse drugs and report fingerprints/diagnostics");
  paths(featurize, true, false, false);
  featurize->add_option("--out", cfg.out);

  auto *split = app.add_subcommand("split", "Seeded train/test split of a triple file");
  paths(split, false, false, true);
  split->add_option("--train-size", cfg.train_size);
  split->add_option("--seed", cfg.seed);
  split->add_option("--out-train", cfg.out_train);
  split->add_option("--out-test", cfg.out_test);

  auto *negatives = app.add_subcommand("negatives", "Append uniformly sampled negatives");
  paths(negatives, false, false, true);
  negatives->add_option("--seed", cfg.seed);
  negatives->add_option("--out", cfg.out);

  auto *train = app.add_subcommand("train", "Train a model on all given triples");
  paths(train, true, true, true);
  training(train);
  train->add_option("--checkpoint", cfg.checkpoint);
  train->add_option("--loss-trace", cfg.loss_trace);

  auto *evaluate = app.add_subcommand("evaluate", "Score a checkpoint or run the split protocol");
  paths(evaluate, true, true, true);
  training(evaluate);
  evaluate->add_option("--checkpoint", cfg.checkpoint);
  evaluate->add_option("--train-size", cfg.train_size);
  evaluate->add_option("--repeats", cfg.n_repeats);
  evaluate->add_option("--jobs", cfg.jobs);
  evaluate->add_option("--metrics", cfg.metrics);
  evaluate->add_option("--predictions", cfg.predictions);

  auto *predict = app.add_subcommand("predict", "Score triples with a checkpoint");
  paths(predict, true, true, true);
  predict->add_option("--checkpoint", cfg.checkpoint);
  predict->add_option("--batch-size", cfg.optimizer.batch_size);
  predict->add_option("--out", cfg.out);

  auto *benchmark = app.add_subcommand("benchmark", "Epoch runtime sweep and inference projection");
  benchmark->add_option("--models", cfg.models)->delimiter(',');
  benchmark->add_option("--batch-sizes", cfg.batch_sizes)->delimiter(',');
  benchmark->add_option("--n-pairs", cfg.n_pairs);
  benchmark->add_option("--repeats", cfg.repeats);
  benchmark->add_option("--seed", cfg.seed);
  benchmark->add_option("--out", cfg.out);
  benchmark->add_option("--inference-out", cfg.inference_out);
  benchmark->add_option("--drug-counts", cfg.drug_counts)->delimiter(',');
  benchmark->add_option("--inference-batch", cfg.inference_batch);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError &e) {
    std::string message = e.what();
    std::replace(message.begin(), message.end(), '\n', ' ');
    err << "error: Usage: " << message << '\n';
    return 2;
  }

  try {
    if (*featurize) cmd_featurize(cfg);
    else if (*split) cmd_split(cfg);
    else if (*negatives) cmd_negatives(cfg);
    else if (*train) cmd_train(cfg);
    else if (*evaluate) cmd_evaluate(cfg);
    else if (*predict) cmd_predict(cfg);
    else if (*benchmark) cmd_benchmark(cfg);
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception &e) {
    err << "error: Internal: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace pairscore::cli
