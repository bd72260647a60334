//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PAIRSCORE_CLI_COMMANDS_HPP_
#define PAIRSCORE_CLI_COMMANDS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pairscore/neuro/adam.hpp"

namespace pairscore::cli {

/// Everything a command may read from flags or the config file.
struct RunConfig {
  std::filesystem::path drugs;
  std::filesystem::path contexts;
  std::filesystem::path triples;
  std::filesystem::path checkpoint;
  std::filesystem::path out;            // primary output of featurize/negatives/predict
  std::filesystem::path out_train;
  std::filesystem::path out_test;
  std::filesystem::path loss_trace;
  std::filesystem::path metrics;
  std::filesystem::path predictions;
  std::filesystem::path inference_out;

  std::string model = "deepsynergy";
  std::string hyperparameters;  // JSON object of model overrides
  neuro::OptimizerConfig optimizer;
  std::uint64_t seed = 0;
  double train_size = 0.8;
  std::size_t n_repeats = 1;
  std::size_t jobs = 1;

  // benchmark
  std::vector<std::string> models { "deepsynergy", "epgcnds" };
  std::vector<std::size_t> batch_sizes { 256, 512, 1024, 2048, 4096 };
  std::size_t n_pairs = std::size_t { 1 } << 17;
  std::size_t repeats = 10;
  std::vector<std::size_t> drug_counts { 512, 1024, 2048, 4096 };
  std::size_t inference_batch = 4096;
};

// Commands. Each throws pairscore::Error on failure.

/// drug_id,status,n_atoms,n_bonds,popcount,message per input row.
void cmd_featurize(const RunConfig &cfg);
void cmd_split(const RunConfig &cfg);
void cmd_negatives(const RunConfig &cfg);
/// Trains on all of cfg.triples; writes the checkpoint and the loss trace.
void cmd_train(const RunConfig &cfg);
/// With a checkpoint: scores cfg.triples. Otherwise n_repeats == 1 runs one
/// seeded split and n_repeats >= 2 runs the repeated-split protocol (the
/// predictions file then holds the first repeat's test split).
void cmd_evaluate(const RunConfig &cfg);
void cmd_benchmark(const RunConfig &cfg);
void cmd_predict(const RunConfig &cfg);

/// Parses `args` (without the program name) and dispatches. Returns the
/// process exit code; failures print one "error: ..." line to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace pairscore::cli

#endif  // PAIRSCORE_CLI_COMMANDS_HPP_
