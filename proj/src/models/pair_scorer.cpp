//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "pairscore/models/pair_scorer.hpp"

#include <algorithm>

#include "pairscore/error.hpp"
#include "pairscore/neuro/checkpoint.hpp"

namespace pairscore::models {
namespace {
using neuro::ParamGroup;
using neuro::Tape;
using neuro::Var;

bool is_gcn(std::string_view name) { return name == "epgcnds" || name == "deepdds"; }

Wiring wiring_of(std::string_view name) {
  if (name == "deepddi") return { false, true, false };
  if (name == "deepsynergy") return { true, true, false };
  if (name == "matchmaker") return { true, true, false };
  if (name == "epgcnds") return { false, false, true };
  if (name == "deepdds") return { true, false, true };
  throw Error(ErrorCode::UnknownModel, std::string(name));
}

void require_nonzero(const std::vector<std::size_t> &widths, std::string_view what) {
  for (std::size_t w: widths) {
    if (w == 0) throw Error(ErrorCode::InvalidArgument, std::string(what) + " has a zero width");
  }
}

// Width of the representation handed to the head.
std::size_t head_input(const ModelConfig &c) {
  const std::string &n = c.name;
  if (n == "deepddi") return 2 * c.drug_width;
  if (n == "deepsynergy") return 2 * c.drug_channels.back() + c.context_channels.back();
  if (n == "matchmaker") return 2 * c.drug_channels.back();
  if (n == "epgcnds") return c.drug_channels.back();
  return 2 * c.drug_channels.back() + c.context_channels.back();  // deepdds
}

void validate(const ModelConfig &c) {
  wiring_of(c.name);
  if (c.context_width == 0) throw Error(ErrorCode::WidthMismatch, "context width must be >= 1");
  if (c.drug_width == 0 || c.atom_width == 0) {
    throw Error(ErrorCode::WidthMismatch, "drug input widths must be >= 1");
  }
  if (!(c.dropout >= 0.0 && c.dropout < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "dropout must lie in [0, 1)");
  }
  const bool needs_drug = c.name != "deepddi";
  const bool needs_context = c.name == "deepsynergy" || c.name == "deepdds";
  if (needs_drug == c.drug_channels.empty()) {
    throw Error(ErrorCode::InvalidArgument,
                c.name + (needs_drug ? " needs drug_channels" : " takes no drug_channels"));
  }
  if (needs_context == c.context_channels.empty()) {
    throw Error(ErrorCode::InvalidArgument,
                c.name + (needs_context ? " needs context_channels" : " takes no context_channels"));
  }
  if (c.head_channels.empty()) throw Error(ErrorCode::InvalidArgument, "head_channels is empty");
  require_nonzero(c.drug_channels, "drug_channels");
  require_nonzero(c.context_channels, "context_channels");
  require_nonzero(c.head_channels, "head_channels");
}

void chain(std::vector<neuro::LayerSpec> &out, const std::string &prefix, ParamGroup group,
           std::size_t in, const std::vector<std::size_t> &widths, bool bias = true) {
  for (std::size_t i = 0; i < widths.size(); ++i) {
    out.push_back({ prefix + std::to_string(i), group, in, widths[i], bias });
    in = widths[i];
  }
}

Var param(Tape &tape, const neuro::ParameterStore &p, const std::string &name) {
  return tape.parameter(p, name);
}

// linear -> relu -> dropout for each width of a named stack.
Var dense_stack(Tape &tape, const neuro::ParameterStore &p, Var x, const std::string &prefix,
                std::size_t depth, double rate, bool training, Rng &rng) {
  for (std::size_t i = 0; i < depth; ++i) {
    const std::string layer = prefix + std::to_string(i);
    x = neuro::linear(tape, x, param(tape, p, layer + ".weight"), param(tape, p, layer + ".bias"));
    x = neuro::relu(tape, x);
    x = neuro::dropout(tape, x, rate, training, rng);
  }
  return x;
}

// gcn_conv -> relu -> dropout -> ... -> gcn_conv -> mean_pool.
Var gcn_encoder(Tape &tape, const neuro::ParameterStore &p, const batch::PackedGraph &g,
                std::size_t depth, double rate, bool training, Rng &rng) {
  auto adjacency = neuro::make_gcn_adjacency(g);
  Var h = tape.borrow(g.node_features);
  for (std::size_t i = 0; i < depth; ++i) {
    h = neuro::gcn_conv(tape, adjacency, h, param(tape, p, "drug_encoder.conv" + std::to_string(i) + ".weight"));
    if (i + 1 < depth) {
      h = neuro::relu(tape, h);
      h = neuro::dropout(tape, h, rate, training, rng);
    }
  }
  return neuro::mean_pool(tape, g, h);
}

const Tensor &require_tensor(const std::optional<Tensor> &t, std::string_view field,
                             std::size_t rows, std::size_t width) {
  if (!t) throw Error(ErrorCode::MissingBatchField, std::string(field));
  if (t->rank() != 2 || t->rows() != rows || t->cols() != width) {
    throw Error(ErrorCode::WidthMismatch, std::string(field) + " is " + shape_string(t->shape())
                                              + ", expected [" + std::to_string(rows) + ", "
                                              + std::to_string(width) + "]");
  }
  return *t;
}

const batch::PackedGraph &require_graph(const std::optional<batch::PackedGraph> &g,
                                        std::string_view field, std::size_t rows,
                                        std::size_t width) {
  if (!g) throw Error(ErrorCode::MissingBatchField, std::string(field));
  if (g->graph_count() != rows) {
    throw Error(ErrorCode::WidthMismatch, std::string(field) + " holds "
                                              + std::to_string(g->graph_count()) + " graphs for "
                                              + std::to_string(rows) + " rows");
  }
  if (g->node_features.cols() != width) {
    throw Error(ErrorCode::WidthMismatch, std::string(field) + " atom features have "
                                              + std::to_string(g->node_features.cols())
                                              + " columns, expected " + std::to_string(width));
  }
  return *g;
}

// Programmatic JSON stores small literals as signed integers.
bool is_count(const nlohmann::json &v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

std::vector<std::size_t> size_list(const nlohmann::json &j, std::string_view key) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidArgument, std::string(key) + " must be an array");
  std::vector<std::size_t> out;
  for (const auto &v: j) {
    if (!is_count(v)) {
      throw Error(ErrorCode::InvalidArgument, std::string(key) + " entries must be non-negative integers");
    }
    out.push_back(v.get<std::size_t>());
  }
  return out;
}
}  // namespace

nlohmann::json ModelConfig::to_json() const {
  return {
    { "name", name },
    { "context_width", context_width },
    { "drug_width", drug_width },
    { "atom_width", atom_width },
    { "drug_channels", drug_channels },
    { "context_channels", context_channels },
    { "head_channels", head_channels },
    { "dropout", dropout },
    { "init_seed", init_seed },
  };
}

ModelConfig ModelConfig::from_json(const nlohmann::json &j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "hyperparameters must be a JSON object");
  ModelConfig c;
  auto count = [](const nlohmann::json &v, std::string_view key) {
    if (!is_count(v)) {
      throw Error(ErrorCode::InvalidArgument, std::string(key) + " must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
  };
  for (const auto &[key, v]: j.items()) {
    if (key == "name") {
      if (!v.is_string()) throw Error(ErrorCode::InvalidArgument, "name must be a string");
      c.name = v.get<std::string>();
    } else if (key == "context_width") {
      c.context_width = count(v, key);
    } else if (key == "drug_width") {
      c.drug_width = count(v, key);
    } else if (key == "atom_width") {
      c.atom_width = count(v, key);
    } else if (key == "drug_channels") {
      c.drug_channels = size_list(v, key);
    } else if (key == "context_channels") {
      c.context_channels = size_list(v, key);
    } else if (key == "head_channels") {
      c.head_channels = size_list(v, key);
    } else if (key == "dropout") {
      if (!v.is_number()) throw Error(ErrorCode::InvalidArgument, "dropout must be a number");
      c.dropout = v.get<double>();
    } else if (key == "init_seed") {
      c.init_seed = count(v, key);
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown hyperparameter '" + key + "'");
    }
  }
  return c;
}

ModelConfig default_config(std::string_view name, std::size_t context_width) {
  ModelConfig c;
  c.name = std::string(name);
  c.context_width = context_width;
  if (name == "deepddi") {
    c.head_channels = { 32, 32, 32, 32 };
  } else if (name == "deepsynergy") {
    c.drug_channels = { 128 };
    c.context_channels = { 128 };
    c.head_channels = { 32, 32, 32 };
  } else if (name == "matchmaker") {
    c.drug_channels = { 32, 32 };
    c.head_channels = { 64, 32 };
  } else if (name == "epgcnds") {
    c.drug_channels = { 128, 128 };
    c.head_channels = { 32, 32 };
  } else if (name == "deepdds") {
    c.drug_channels = { 128, 128 };
    c.context_channels = { 512, 256, 128 };
    c.head_channels = { 512, 128 };
  } else {
    throw Error(ErrorCode::UnknownModel, std::string(name));
  }
  if (context_width == 0) throw Error(ErrorCode::WidthMismatch, "context width must be >= 1");
  return c;
}

std::vector<neuro::LayerSpec> layer_specs(const ModelConfig &c) {
  validate(c);
  std::vector<neuro::LayerSpec> specs;
  if (is_gcn(c.name)) {
    chain(specs, "drug_encoder.conv", ParamGroup::DrugEncoder, c.atom_width, c.drug_channels, false);
  } else if (c.name == "matchmaker") {
    chain(specs, "drug_encoder.", ParamGroup::DrugEncoder, c.drug_width + c.context_width, c.drug_channels);
  } else if (!c.drug_channels.empty()) {
    chain(specs, "drug_encoder.", ParamGroup::DrugEncoder, c.drug_width, c.drug_channels);
  }
  if (!c.context_channels.empty()) {
    chain(specs, "context_encoder.", ParamGroup::ContextEncoder, c.context_width, c.context_channels);
  }
  chain(specs, "head.", ParamGroup::Head, head_input(c), c.head_channels);
  specs.push_back({ "head.out", ParamGroup::Head, c.head_channels.back(), 1, true });
  return specs;
}

PairScorer::PairScorer(ModelConfig config)
    : config_(std::move(config)), wiring_(wiring_of(config_.name)) {
  const auto specs = layer_specs(config_);
  params_ = neuro::init_params(specs, config_.init_seed);
}

PairScorer::PairScorer(ModelConfig config, neuro::ParameterStore params)
    : config_(std::move(config)), wiring_(wiring_of(config_.name)) {
  const auto specs = layer_specs(config_);
  const neuro::ParameterStore reference = neuro::init_params(specs, 0);
  if (reference.size() != params.size()) {
    throw Error(ErrorCode::CheckpointFormat,
                std::to_string(params.size()) + " parameters, " + config_.name + " has "
                    + std::to_string(reference.size()));
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (reference[i].name != params[i].name || reference[i].group != params[i].group
        || reference[i].value.shape() != params[i].value.shape()) {
      throw Error(ErrorCode::CheckpointFormat, "parameter '" + params[i].name
                                                   + "' does not match the architecture");
    }
  }
  params_ = std::move(params);
}

Var PairScorer::forward(Tape &tape, const batch::DrugPairBatch &batch, bool training,
                        Rng &rng) const {
  const std::size_t b = batch.size();
  const ModelConfig &c = config_;
  const double rate = c.dropout;
  const auto &p = params_;

  Var context {};
  if (wiring_.context_features) {
    context = tape.borrow(require_tensor(batch.context_features, "context_features", b, c.context_width));
  }
  Var left {};
  Var right {};
  if (wiring_.drug_features) {
    left = tape.borrow(require_tensor(batch.drug_features_left, "drug_features_left", b, c.drug_width));
    right = tape.borrow(require_tensor(batch.drug_features_right, "drug_features_right", b, c.drug_width));
  }
  if (wiring_.drug_molecules) {
    const auto &gl = require_graph(batch.graphs_left, "graphs_left", b, c.atom_width);
    const auto &gr = require_graph(batch.graphs_right, "graphs_right", b, c.atom_width);
    left = gcn_encoder(tape, p, gl, c.drug_channels.size(), rate, training, rng);
    right = gcn_encoder(tape, p, gr, c.drug_channels.size(), rate, training, rng);
  }

  Var combined {};
  if (c.name == "deepddi") {
    const Var parts[] = { left, right };
    combined = neuro::concat(tape, parts, 1);
  } else if (c.name == "deepsynergy") {
    const Var hl = dense_stack(tape, p, left, "drug_encoder.", c.drug_channels.size(), rate, training, rng);
    const Var hr = dense_stack(tape, p, right, "drug_encoder.", c.drug_channels.size(), rate, training, rng);
    const Var hc = dense_stack(tape, p, context, "context_encoder.", c.context_channels.size(), rate, training, rng);
    const Var parts[] = { hl, hr, hc };
    combined = neuro::concat(tape, parts, 1);
  } else if (c.name == "matchmaker") {
    const Var in_l[] = { left, context };
    const Var in_r[] = { right, context };
    const Var hl = dense_stack(tape, p, neuro::concat(tape, in_l, 1), "drug_encoder.",
                               c.drug_channels.size(), rate, training, rng);
    const Var hr = dense_stack(tape, p, neuro::concat(tape, in_r, 1), "drug_encoder.",
                               c.drug_channels.size(), rate, training, rng);
    const Var parts[] = { hl, hr };
    combined = neuro::concat(tape, parts, 1);
  } else if (c.name == "epgcnds") {
    combined = neuro::add(tape, left, right);
  } else {  // deepdds
    const Var hc = dense_stack(tape, p, context, "context_encoder.", c.context_channels.size(), rate, training, rng);
    const Var parts[] = { left, right, hc };
    combined = neuro::concat(tape, parts, 1);
  }

  Var h = dense_stack(tape, p, combined, "head.", c.head_channels.size(), rate, training, rng);
  h = neuro::linear(tape, h, param(tape, p, "head.out.weight"), param(tape, p, "head.out.bias"));
  return neuro::sigmoid(tape, h);
}

std::vector<double> PairScorer::score(const batch::DrugPairBatch &batch, bool training,
                                      std::uint64_t seed) const {
  if (batch.size() == 0) return {};
  Tape tape;
  Rng rng(seed);
  const Var out = forward(tape, batch, training, rng);
  const auto values = tape.value(out).data();
  return { values.begin(), values.end() };
}

void PairScorer::check_widths(const dataset::DrugFeatureSet &drugs,
                              const dataset::ContextFeatureSet &contexts) const {
  if (wiring_.drug_features && !drugs.empty() && drugs.fingerprint_width() != config_.drug_width) {
    throw Error(ErrorCode::WidthMismatch, "fingerprints have " + std::to_string(drugs.fingerprint_width())
                                              + " bits, model expects " + std::to_string(config_.drug_width));
  }
  if (wiring_.context_features && contexts.width() != config_.context_width) {
    throw Error(ErrorCode::WidthMismatch, "contexts have " + std::to_string(contexts.width())
                                              + " features, model expects " + std::to_string(config_.context_width));
  }
}

PairScorer build_model(std::string_view name, std::size_t context_width,
                       const nlohmann::json &overrides, std::uint64_t seed) {
  ModelConfig c = default_config(name, context_width);
  c.init_seed = seed;
  if (!overrides.is_null()) {
    if (!overrides.is_object()) throw Error(ErrorCode::InvalidArgument, "overrides must be a JSON object");
    nlohmann::json merged = c.to_json();
    for (const auto &[key, v]: overrides.items()) {
      if (key == "name" || key == "context_width") {
        throw Error(ErrorCode::InvalidArgument, "'" + key + "' cannot be overridden");
      }
      if (!merged.contains(key)) throw Error(ErrorCode::InvalidArgument, "unknown hyperparameter '" + key + "'");
      merged[key] = v;
    }
    c = ModelConfig::from_json(merged);
  }
  return PairScorer(std::move(c));
}

void save_model(const std::filesystem::path &path, const PairScorer &model) {
  neuro::save_checkpoint(path, { model.name(), model.config().to_json().dump(), model.params() });
}

PairScorer load_model(const std::filesystem::path &path) {
  neuro::Checkpoint ckpt = neuro::load_checkpoint(path);
  nlohmann::json hyper;
  try {
    hyper = nlohmann::json::parse(ckpt.hyperparameters);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::CheckpointFormat, std::string("hyperparameters: ") + e.what());
  }
  ModelConfig config = ModelConfig::from_json(hyper);
  if (config.name != ckpt.model) {
    throw Error(ErrorCode::CheckpointFormat, "model name '" + ckpt.model + "' disagrees with hyperparameters");
  }
  return PairScorer(std::move(config), std::move(ckpt.params));
}

}  // namespace pairscore::models
