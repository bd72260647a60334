//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

// Finite-difference cases for every differentiable op and every model.

#ifndef PAIRSCORE_TESTS_GRAD_CASES_HPP_
#define PAIRSCORE_TESTS_GRAD_CASES_HPP_

#include <memory>
#include <string>
#include <vector>

#include "pairscore/batch/generator.hpp"
#include "pairscore/batch/packed_graph.hpp"
#include "pairscore/models/pair_scorer.hpp"
#include "pairscore/molio/features.hpp"
#include "pairscore/molio/smiles.hpp"
#include "pairscore/neuro/tape.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace pairscore::oracle {

struct GradCase {
  std::string name;
  std::shared_ptr<neuro::ParameterStore> store;  // the store the loss reads
  LossFn loss;
  // Keeps graphs, targets and probe weights alive for the loss closure.
  std::shared_ptr<void> keep;
};

inline Tensor random_tensor(std::vector<std::size_t> shape, Rng &rng, double lo = -1.0, double hi = 1.0) {
  Tensor t(std::move(shape));
  for (double &x: t.data()) x = rng.uniform(lo, hi);
  return t;
}

inline std::size_t random_dim(Rng &rng) { return 1 + rng.index(8); }

/// Toy molecules packed into one graph batch.
struct ToyGraphs {
  std::vector<molio::MolecularGraph> graphs;
  std::vector<Tensor> nodes;
  std::vector<Tensor> edges;
  batch::PackedGraph packed;

  explicit ToyGraphs(std::vector<std::string> smiles) {
    for (const auto &s: smiles) {
      graphs.push_back(molio::parse_smiles(s));
      nodes.push_back(molio::atom_features(graphs.back()));
      edges.push_back(molio::bond_features(graphs.back()));
    }
    std::vector<batch::GraphRef> refs;
    for (std::size_t i = 0; i < graphs.size(); ++i) refs.push_back({ &graphs[i], &nodes[i], &edges[i] });
    packed = batch::pack_graphs(refs);
  }
};

/// One case per differentiable op, shapes drawn at random up to 8. Each loss
/// is a weighted sum of the op output so every output entry is probed.
inline std::vector<GradCase> op_cases(std::uint64_t seed) {
  using namespace neuro;
  Rng rng(seed);
  std::vector<GradCase> out;
  auto probe = [](Tape &t, Var y, const Tensor &w) { return weighted_sum(t, y, w); };

  {
    const std::size_t m = random_dim(rng), k = random_dim(rng), n = random_dim(rng);
    GradCase c { "matmul", std::make_shared<neuro::ParameterStore>(), {}, nullptr };
    c.store->add("a", ParamGroup::Head, random_tensor({ m, k }, rng));
    c.store->add("b", ParamGroup::Head, random_tensor({ k, n }, rng));
    auto w = std::make_shared<Tensor>(random_tensor({ m, n }, rng));
    c.keep = w;
    c.loss = [w, probe](Tape &t, const ParameterStore &s) {
      return probe(t, matmul(t, t.parameter(s, "a"), t.parameter(s, "b")), *w);
    };
    out.push_back(std::move(c));
  }
  {
    const std::size_t m = random_dim(rng), k = random_dim(rng), n = random_dim(rng);
    GradCase c { "linear", std::make_shared<neuro::ParameterStore>(), {}, nullptr };
    c.store->add("x", ParamGroup::Head, random_tensor({ m, k }, rng));
    c.store->add("w", ParamGroup::Head, random_tensor({ k, n }, rng));
    c.store->add("b", ParamGroup::Head, random_tensor({ n }, rng));
    auto w = std::make_shared<Tensor>(random_tensor({ m, n }, rng));
    c.keep = w;
    c.loss = [w, probe](Tape &t, const ParameterStore &s) {
      return probe(t, linear(t, t.parameter(s, "x"), t.parameter(s, "w"), t.parameter(s, "b")), *w);
    };
    out.push_back(std::move(c));
  }
  for (const char *name: { "relu", "sigmoid" }) {
    const std::size_t m = random_dim(rng), n = random_dim(rng);
    GradCase c { name, std::make_shared<neuro::ParameterStore>(), {}, nullptr };
    c.store->add("x", ParamGroup::Head, random_tensor({ m, n }, rng, -3.0, 3.0));
    auto w = std::make_shared<Tensor>(random_tensor({ m, n }, rng));
    c.keep = w;
    const bool is_relu = std::string(name) == "relu";
    c.loss = [w, probe, is_relu](Tape &t, const ParameterStore &s) {
      const Var x = t.parameter(s, "x");
      return probe(t, is_relu ? relu(t, x) : sigmoid(t, x), *w);
    };
    out.push_back(std::move(c));
  }
  {
    const std::size_t m = random_dim(rng), n = random_dim(rng);
    GradCase c { "add", std::make_shared<neuro::ParameterStore>(), {}, nullptr };
    c.store->add("a", ParamGroup::Head, random_tensor({ m, n }, rng));
    c.store->add("b", ParamGroup::Head, random_tensor({ m, n }, rng));
    auto w = std::make_shared<Tensor>(random_tensor({ m, n }, rng));
    c.keep = w;
    c.loss = [w, probe](Tape &t, const ParameterStore &s) {
      return probe(t, add(t, t.parameter(s, "a"), t.parameter(s, "b")), *w);
    };
    out.push_back(std::move(c));
  }
  {
    const std::size_t m = random_dim(rng), n = random_dim(rng);
    const std::uint64_t mask_seed = rng.next();
    GradCase c { "dropout", std::make_shared<neuro::ParameterStore>(), {}, nullptr };
    c.store->add("x", ParamGroup::Head, random_tensor({ m, n }, rng));
    auto w = std::make_shared<Tensor>(random_tensor({ m, n }, rng));
    c.keep = w;
    c.loss = [w, probe, mask_seed](Tape &t, const ParameterStore &s) {
      Rng mask(mask_seed);  // same mask on every evaluation
      return probe(t, dropout(t, t.parameter(s, "x"), 0.5, true, mask), *w);
    };
    out.push_back(std::move(c));
  }
  for (std::size_t axis: { 0u, 1u }) {
    const std::size_t m = random_dim(rng), n = random_dim(rng), extra = random_dim(rng);
    GradCase c { axis == 0 ? "concat_rows" : "concat_cols", std::make_shared<neuro::ParameterStore>(), {}, nullptr };
    c.store->add("a", ParamGroup::Head, random_tensor({ m, n }, rng));
    c.store->add("b", ParamGroup::Head,
                random_tensor(axis == 0 ? std::vector<std::size_t> { extra, n } : std::vector<std::size_t> { m, extra }, rng));
    auto w = std::make_shared<Tensor>(random_tensor(
        axis == 0 ? std::vector<std::size_t> { m + extra, n } : std::vector<std::size_t> { m, n + extra }, rng));
    c.keep = w;
    c.loss = [w, probe, axis](Tape &t, const ParameterStore &s) {
      const Var parts[] = { t.parameter(s, "a"), t.parameter(s, "b") };
      return probe(t, concat(t, parts, axis), *w);
    };
    out.push_back(std::move(c));
  }
  {
    auto graphs = std::make_shared<ToyGraphs>(std::vector<std::string> { "CCO", "c1ccccc1", "CN" });
    const std::size_t f_in = random_dim(rng), f_out = random_dim(rng);
    GradCase c { "gcn_conv", std::make_shared<neuro::ParameterStore>(), {}, nullptr };
    c.store->add("h", ParamGroup::DrugEncoder, random_tensor({ graphs->packed.node_count(), f_in }, rng));
    c.store->add("w", ParamGroup::DrugEncoder, random_tensor({ f_in, f_out }, rng));
    auto w = std::make_shared<Tensor>(random_tensor({ graphs->packed.node_count(), f_out }, rng));
    c.keep = std::make_shared<std::pair<std::shared_ptr<ToyGraphs>, std::shared_ptr<Tensor>>>(graphs, w);
    c.loss = [graphs, w, probe](Tape &t, const ParameterStore &s) {
      return probe(t, gcn_conv(t, graphs->packed, t.parameter(s, "h"), t.parameter(s, "w")), *w);
    };
    out.push_back(std::move(c));
  }
  {
    auto graphs = std::make_shared<ToyGraphs>(std::vector<std::string> { "CC(=O)O", "C", "c1ccncc1" });
    const std::size_t f = random_dim(rng);
    GradCase c { "mean_pool", std::make_shared<neuro::ParameterStore>(), {}, nullptr };
    c.store->add("h", ParamGroup::DrugEncoder, random_tensor({ graphs->packed.node_count(), f }, rng));
    auto w = std::make_shared<Tensor>(random_tensor({ graphs->packed.graph_count(), f }, rng));
    c.keep = std::make_shared<std::pair<std::shared_ptr<ToyGraphs>, std::shared_ptr<Tensor>>>(graphs, w);
    c.loss = [graphs, w, probe](Tape &t, const ParameterStore &s) {
      return probe(t, mean_pool(t, graphs->packed, t.parameter(s, "h")), *w);
    };
    out.push_back(std::move(c));
  }
  {
    const std::size_t b = random_dim(rng);
    GradCase c { "bce_loss", std::make_shared<neuro::ParameterStore>(), {}, nullptr };
    c.store->add("z", ParamGroup::Head, random_tensor({ b, 1 }, rng, -2.0, 2.0));
    auto y = std::make_shared<std::vector<double>>();
    for (std::size_t i = 0; i < b; ++i) y->push_back(rng.uniform());
    c.keep = y;
    c.loss = [y](Tape &t, const ParameterStore &s) {
      return bce_loss(t, sigmoid(t, t.parameter(s, "z")), *y);
    };
    out.push_back(std::move(c));
  }
  return out;
}

/// Tiny layer widths that keep each model's wiring but make exhaustive
/// finite differences cheap.
inline nlohmann::json small_widths(std::string_view model) {
  nlohmann::json j = nlohmann::json::object();
  const auto cfg = models::default_config(model, 3);
  auto shrink = [](const std::vector<std::size_t> &v) {
    return std::vector<std::size_t>(v.size(), 4);
  };
  j["drug_channels"] = shrink(cfg.drug_channels);
  j["context_channels"] = shrink(cfg.context_channels);
  j["head_channels"] = shrink(cfg.head_channels);
  return j;
}

/// A full-model case on B = 4 toy triples: BCE of the training-mode forward
/// pass with a fixed dropout stream.
inline GradCase model_case(std::string_view model, const nlohmann::json &overrides, std::uint64_t seed) {
  struct Data {
    dataset::DrugFeatureSet drugs = testing::toy_drugs(6);
    dataset::ContextFeatureSet contexts = testing::toy_contexts(2, 3);
    std::optional<batch::DrugPairBatch> batch;
    std::optional<models::PairScorer> scorer;
  };
  auto data = std::make_shared<Data>();
  dataset::LabeledTriples y;
  y.add("D0", "D1", "C0", 1);
  y.add("D2", "D3", "C1", 0);
  y.add("D4", "D5", "C0", 1);
  y.add("D1", "D4", "C1", 0);
  data->scorer.emplace(models::build_model(model, 3, overrides, seed));
  // Zero-initialised biases can leave pre-activations exactly on the relu
  // kink (e.g. a row zeroed by dropout), where central differences are
  // meaningless; random biases move every unit off the kink.
  Rng bias_rng(Rng::derive(seed, 99));
  for (std::size_t p = 0; p < data->scorer->params().size(); ++p) {
    auto &param = data->scorer->params()[p];
    if (param.name.ends_with(".bias")) {
      for (double &v: param.value.data()) v = bias_rng.uniform(-0.5, 0.5);
    }
  }
  batch::BatchGenerator gen(y, data->drugs, data->contexts, 4, data->scorer->wiring().flags(), 0, false);
  data->batch = gen.next();

  // Aliases the scorer's own store: its forward pass binds tape leaves to it.
  GradCase c { std::string(model),
               std::shared_ptr<neuro::ParameterStore>(data, &data->scorer->params()), {}, data };
  const std::uint64_t dropout_seed = Rng::derive(seed, 3);
  c.loss = [data, dropout_seed](neuro::Tape &t, const neuro::ParameterStore &) {
    Rng rng(dropout_seed);
    const neuro::Var pred = data->scorer->forward(t, *data->batch, true, rng);
    return neuro::bce_loss(t, pred, data->batch->labels);
  };
  return c;
}

}  // namespace pairscore::oracle

#endif  // PAIRSCORE_TESTS_GRAD_CASES_HPP_
