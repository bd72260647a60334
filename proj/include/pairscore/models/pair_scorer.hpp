//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PAIRSCORE_MODELS_PAIR_SCORER_HPP_
#define PAIRSCORE_MODELS_PAIR_SCORER_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pairscore/batch/generator.hpp"
#include "pairscore/dataset/feature_sets.hpp"
#include "pairscore/neuro/parameters.hpp"
#include "pairscore/neuro/tape.hpp"

namespace pairscore::models {

/// The five implemented architectures, by registry name.
inline constexpr std::string_view kModelNames[] = {
  "deepddi", "deepsynergy", "matchmaker", "epgcnds", "deepdds"
};

/// Which batch fields a model consumes.
struct Wiring {
  bool context_features = false;
  bool drug_features = false;
  bool drug_molecules = false;

  batch::BatchFlags flags() const noexcept {
    return { context_features, drug_features, drug_molecules };
  }
};

/// Hyperparameter record: enough to rebuild the architecture. Channel lists
/// are hidden widths; every hidden layer is followed by relu and dropout.
struct ModelConfig {
  std::string name;
  std::size_t context_width = 0;    // k
  std::size_t drug_width = 256;     // fingerprint bits
  std::size_t atom_width = 23;      // atom feature columns
  std::vector<std::size_t> drug_channels;
  std::vector<std::size_t> context_channels;
  std::vector<std::size_t> head_channels;
  double dropout = 0.5;
  std::uint64_t init_seed = 0;

  nlohmann::json to_json() const;
  /// Throws InvalidArgument on unknown keys or bad types.
  static ModelConfig from_json(const nlohmann::json &j);
};

/// Default configuration of `name`. Throws UnknownModel; WidthMismatch when
/// context_width is 0.
ModelConfig default_config(std::string_view name, std::size_t context_width);

/// f_H(f_D(d), f_D(d'), f_C(c)) for one architecture, with its parameters.
class PairScorer {
 public:
  /// Validates `config` and initialises parameters from config.init_seed.
  explicit PairScorer(ModelConfig config);
  /// Adopts existing parameters; throws CheckpointFormat if their names or
  /// shapes differ from what `config` builds.
  PairScorer(ModelConfig config, neuro::ParameterStore params);

  const std::string &name() const noexcept { return config_.name; }
  const ModelConfig &config() const noexcept { return config_; }
  const Wiring &wiring() const noexcept { return wiring_; }
  neuro::ParameterStore &params() noexcept { return params_; }
  const neuro::ParameterStore &params() const noexcept { return params_; }

  /// Records the forward pass; returns the B x 1 probability node. Dropout
  /// masks come from `rng` and only in training mode.
  /// Errors: MissingBatchField, WidthMismatch.
  neuro::Var forward(neuro::Tape &tape, const batch::DrugPairBatch &batch,
                     bool training, Rng &rng) const;

  /// Probabilities for every batch row, each in (0, 1). Deterministic when
  /// training is false.
  std::vector<double> score(const batch::DrugPairBatch &batch, bool training = false,
                            std::uint64_t seed = 0) const;

  /// Throws WidthMismatch when the feature sets disagree with the declared
  /// input widths.
  void check_widths(const dataset::DrugFeatureSet &drugs,
                    const dataset::ContextFeatureSet &contexts) const;

 private:
  ModelConfig config_;
  Wiring wiring_;
  neuro::ParameterStore params_;
};

/// Layer list of a configuration, in parameter order.
std::vector<neuro::LayerSpec> layer_specs(const ModelConfig &config);

/// Builds `name` for context width k. `overrides` is a JSON object whose keys
/// replace fields of the default configuration (e.g. {"dropout": 0.2}).
/// Errors: UnknownModel, WidthMismatch, InvalidArgument.
PairScorer build_model(std::string_view name, std::size_t context_width,
                       const nlohmann::json &overrides = nlohmann::json::object(),
                       std::uint64_t seed = 0);

void save_model(const std::filesystem::path &path, const PairScorer &model);
/// Errors: FileNotFound, CheckpointFormat, UnknownModel.
PairScorer load_model(const std::filesystem::path &path);

}  // namespace pairscore::models

#endif  // PAIRSCORE_MODELS_PAIR_SCORER_HPP_
