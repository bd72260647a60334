//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "pairscore/error.hpp"
#include "pairscore/neuro/adam.hpp"
#include "pairscore/neuro/checkpoint.hpp"
#include "pairscore/neuro/parameters.hpp"
#include "pairscore/neuro/tape.hpp"
#include "support/fixtures.hpp"
#include "support/grad_cases.hpp"
#include "support/oracles.hpp"

namespace pairscore::neuro {
namespace {

ErrorCode code_of(const std::function<void()> &f) {
  try {
    f();
  } catch (const Error &e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::IoError;
}

TEST(Ops, PointValues) {
  Tape t;
  const Var x = t.constant(Tensor::vector({ -2.0, 0.0, 3.0 }));
  EXPECT_EQ(t.value(sigmoid(t, x))[1], 0.5);
  const Tensor &r = t.value(relu(t, x));
  EXPECT_EQ(r[0], 0.0);
  EXPECT_EQ(r[2], 3.0);
  // Saturated inputs stay finite.
  const Tensor &s = t.value(sigmoid(t, t.constant(Tensor::vector({ -800.0, 800.0 }))));
  EXPECT_EQ(s[0], 0.0);
  EXPECT_EQ(s[1], 1.0);
}

TEST(Ops, DropoutEvalIsIdentityAndTrainingKeepsExpectation) {
  Tape t;
  Rng rng(1);
  const Var x = t.constant(Tensor({ 4, 4 }, 2.0));
  const Var y = dropout(t, x, 0.5, false, rng);
  EXPECT_EQ(y.id, x.id);
  EXPECT_EQ(t.value(y), t.value(x));

  const Var ones = t.constant(Tensor({ 10000 }, 1.0));
  const Tensor &d = t.value(dropout(t, ones, 0.5, true, rng));
  double mean = 0.0;
  for (double v: d.data()) {
    EXPECT_TRUE(v == 0.0 || v == 2.0);
    mean += v / 10000.0;
  }
  EXPECT_NEAR(mean, 1.0, 0.02);
  EXPECT_EQ(code_of([&] { dropout(t, x, 1.0, true, rng); }), ErrorCode::InvalidArgument);
}

TEST(Ops, BceValues) {
  Tape t;
  const std::vector<double> one { 1.0 };
  EXPECT_NEAR(t.value(bce_loss(t, t.constant(Tensor::vector({ 0.5 })), one))[0], std::log(2.0), 1e-15);
  const std::vector<double> y { 1.0, 0.0 };
  EXPECT_NEAR(t.value(bce_loss(t, t.constant(Tensor::vector({ 0.9, 0.1 })), y))[0], -std::log(0.9), 1e-12);
  EXPECT_NEAR(-std::log(0.9), 0.10536, 1e-5);
  // Perfect predictions are clamped: a tiny positive loss.
  const double perfect = t.value(bce_loss(t, t.constant(Tensor::vector({ 1.0, 0.0 })), y))[0];
  EXPECT_GE(perfect, 0.0);
  EXPECT_LE(perfect, -std::log(1.0 - kProbabilityClamp) + 1e-15);
  EXPECT_EQ(code_of([&] { bce_loss(t, t.constant(Tensor::vector({ 0.5 })), y); }), ErrorCode::ShapeMismatch);
}

TEST(Ops, BceIsNonNegative) {
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    Tape t;
    const std::vector<double> y { rng.uniform() };
    EXPECT_GE(t.value(bce_loss(t, t.constant(Tensor::vector({ rng.uniform() })), y))[0], 0.0);
  }
}

TEST(Ops, ShapeErrors) {
  Tape t;
  const Var a = t.constant(Tensor({ 2, 3 }));
  const Var b = t.constant(Tensor({ 2, 3 }));
  EXPECT_EQ(code_of([&] { matmul(t, a, b); }), ErrorCode::ShapeMismatch);
  EXPECT_EQ(code_of([&] { add(t, a, t.constant(Tensor({ 3, 2 }))); }), ErrorCode::ShapeMismatch);
  const Var parts[] = { a, t.constant(Tensor({ 3, 3 })) };
  EXPECT_EQ(code_of([&] { concat(t, parts, 1); }), ErrorCode::ShapeMismatch);
  EXPECT_EQ(code_of([&] { linear(t, a, t.constant(Tensor({ 3, 4 })), t.constant(Tensor({ 3 }))); }),
            ErrorCode::ShapeMismatch);
}

TEST(Gcn, SingleNodeIsLinearMap) {
  oracle::ToyGraphs g({ "C" });
  Tape t;
  Rng rng(4);
  const Tensor w = oracle::random_tensor({ molio::kAtomFeatureWidth, 3 }, rng);
  const Tensor &out = t.value(gcn_conv(t, g.packed, t.constant(g.packed.node_features), t.constant(w)));
  Tensor want;
  gemm(g.packed.node_features, false, w, false, want);
  ASSERT_EQ(out.shape(), want.shape());
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_NEAR(out[i], want[i], 1e-15);
}

TEST(Gcn, TwoNodePathAveragesNeighbours) {
  oracle::ToyGraphs g({ "CO" });
  const auto adj = make_gcn_adjacency(g.packed);
  ASSERT_EQ(adj->weight.size(), 4u);
  for (double w: adj->weight) EXPECT_NEAR(w, 0.5, 1e-15);
  Tape t;
  const Tensor x = Tensor::matrix({ { 1.0, 2.0 }, { 3.0, 6.0 } });
  const Tensor w = Tensor::matrix({ { 1.0, 0.0, 1.0 }, { 0.0, 1.0, 1.0 } });
  const Tensor &out = t.value(gcn_conv(t, adj, t.constant(x), t.constant(w)));
  // mean(x1, x2) = (2, 4); times W = (2, 4, 6) in both rows.
  for (std::size_t r = 0; r < 2; ++r) {
    EXPECT_DOUBLE_EQ(out(r, 0), 2.0);
    EXPECT_DOUBLE_EQ(out(r, 1), 4.0);
    EXPECT_DOUBLE_EQ(out(r, 2), 6.0);
  }
}

TEST(Gcn, UniformFeaturesStayUniformOnRegularGraphs) {
  for (const char *smiles: { "CO", "C1CC1", "c1ccccc1" }) {
    oracle::ToyGraphs g({ smiles });
    Tape t;
    const Tensor x({ g.packed.node_count(), 2 }, 0.7);
    const Tensor &out = t.value(gcn_conv(t, g.packed, t.constant(x), t.constant(Tensor::matrix({ { 1.0 }, { 1.0 } }))));
    for (std::size_t r = 0; r < out.rows(); ++r) EXPECT_NEAR(out(r, 0), 1.4, 1e-14) << smiles;
  }
}

TEST(Gcn, BlocksAreIsolated) {
  oracle::ToyGraphs g({ "CCO", "CN" });
  Rng rng(8);
  const Tensor w = oracle::random_tensor({ molio::kAtomFeatureWidth, 4 }, rng);
  Tensor x = g.packed.node_features;
  Tape t1;
  const Tensor before = t1.value(gcn_conv(t1, g.packed, t1.constant(x), t1.constant(w)));
  for (std::size_t r = 3; r < 5; ++r) {
    for (double &v: x.row(r)) v = rng.uniform(-5, 5);
  }
  Tape t2;
  const Tensor after = t2.value(gcn_conv(t2, g.packed, t2.constant(x), t2.constant(w)));
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 4; ++c) EXPECT_EQ(before(r, c), after(r, c));
  }
}

TEST(Pool, MeanPoolCases) {
  oracle::ToyGraphs one({ "C" });
  Tape t;
  EXPECT_EQ(t.value(mean_pool(t, one.packed, t.constant(one.packed.node_features))), one.packed.node_features);

  oracle::ToyGraphs g({ "CCO", "CN" });
  Tensor h({ 5, 2 }, 0.0);
  for (std::size_t r = 0; r < 3; ++r) h(r, 0) = 4.0, h(r, 1) = -1.0;
  h(3, 0) = 1.0;
  h(4, 0) = 3.0;
  const Tensor &p = t.value(mean_pool(t, g.packed, t.constant(h)));
  EXPECT_EQ(p(0, 0), 4.0);
  EXPECT_EQ(p(0, 1), -1.0);
  EXPECT_EQ(p(1, 0), 2.0);

  // Gradient spreads 1/N_g to every member row.
  ParameterStore s;
  s.add("h", ParamGroup::Head, h);
  Tape tg;
  const Var loss = weighted_sum(tg, mean_pool(tg, g.packed, tg.parameter(s, "h")), Tensor({ 2, 2 }, 1.0));
  const Gradients grads = backward(tg, loss, s);
  const Tensor &gh = grads.at("h");
  for (std::size_t r = 0; r < 3; ++r) EXPECT_DOUBLE_EQ(gh(r, 0), 1.0 / 3.0);
  for (std::size_t r = 3; r < 5; ++r) EXPECT_DOUBLE_EQ(gh(r, 1), 0.5);
}

TEST(Pool, PermutationInvariance) {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    oracle::ToyGraphs g({ "CC(=O)Nc1ccccc1" });
    const Tensor h = oracle::random_tensor({ g.packed.node_count(), 3 }, rng);
    std::vector<std::size_t> perm(h.rows());
    std::iota(perm.begin(), perm.end(), std::size_t { 0 });
    rng.shuffle(std::span<std::size_t>(perm));
    Tensor hp(h.shape());
    for (std::size_t r = 0; r < h.rows(); ++r) std::copy(h.row(r).begin(), h.row(r).end(), hp.row(perm[r]).begin());
    Tape t;
    const Tensor a = t.value(mean_pool(t, g.packed, t.constant(h)));
    const Tensor b = t.value(mean_pool(t, g.packed, t.constant(hp)));
    for (std::size_t c = 0; c < 3; ++c) EXPECT_NEAR(a[c], b[c], 1e-14);
  }
}

TEST(Backward, ZeroInputKillsWeightGradient) {
  ParameterStore s;
  s.add("w", ParamGroup::Head, Tensor::matrix({ { 0.3 } }));
  Tape t;
  const Var x = t.constant(Tensor::matrix({ { 0.0 } }));
  const Var y = sigmoid(t, matmul(t, x, t.parameter(s, "w")));
  const Gradients g = backward(t, weighted_sum(t, y, Tensor::matrix({ { 1.0 } })), s);
  EXPECT_EQ(g.at("w")[0], 0.0);
}

TEST(Backward, Errors) {
  ParameterStore s;
  s.add("w", ParamGroup::Head, Tensor::matrix({ { 1.0, 2.0 } }));
  s.add("unused", ParamGroup::Head, Tensor::vector({ 1.0 }));
  Tape t;
  const Var w = t.parameter(s, "w");
  EXPECT_EQ(code_of([&] { backward(t, w, s); }), ErrorCode::ShapeMismatch);
  const Var l = weighted_sum(t, w, Tensor::matrix({ { 1.0, 1.0 } }));
  EXPECT_EQ(code_of([&] { backward(t, l, s); }), ErrorCode::DisconnectedParameter);
}

TEST(Backward, SharedParameterAccumulates) {
  ParameterStore s;
  s.add("w", ParamGroup::Head, Tensor::matrix({ { 2.0 } }));
  Tape t;
  const Var a = t.parameter(s, "w");
  const Var b = t.parameter(s, "w");
  const Var l = weighted_sum(t, matmul(t, a, b), Tensor::matrix({ { 1.0 } }));
  EXPECT_DOUBLE_EQ(backward(t, l, s).at("w")[0], 4.0);  // d(w^2)/dw
}

class OpGradient : public ::testing::TestWithParam<std::uint64_t> { };

TEST_P(OpGradient, MatchesFiniteDifferences) {
  for (auto &c: oracle::op_cases(GetParam())) {
    const auto r = oracle::check_gradients(*c.store, c.loss);
    EXPECT_LE(r.max_rel_error, 1e-4) << c.name << " worst " << r.worst;
    EXPECT_GT(r.checked, 0u) << c.name;
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, OpGradient, ::testing::Values(1, 2, 3, 4, 5));

TEST(Init, GlorotBoundsDeterminismAndZeroBias) {
  const LayerSpec layers[] = { { "a", ParamGroup::Head, 4, 4, true }, { "b", ParamGroup::DrugEncoder, 4, 2, false } };
  const ParameterStore s = init_params(layers, 3);
  EXPECT_EQ(s.size(), 3u);
  for (double v: s.value("a.weight").data()) EXPECT_LE(std::abs(v), std::sqrt(6.0 / 8.0));
  for (double v: s.value("a.bias").data()) EXPECT_EQ(v, 0.0);
  EXPECT_FALSE(s.index_of("b.bias"));
  EXPECT_EQ(init_params(layers, 3), s);
  EXPECT_FALSE(init_params(layers, 4) == s);
  EXPECT_EQ(s.scalar_count(), 16u + 4u + 8u);
  EXPECT_EQ(s.scalar_count(ParamGroup::DrugEncoder), 8u);
}

TEST(Params, Errors) {
  ParameterStore s;
  s.add("x", ParamGroup::Head, Tensor({ 1 }));
  EXPECT_EQ(code_of([&] { s.add("x", ParamGroup::Head, Tensor({ 1 })); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { s.require("y"); }), ErrorCode::InvalidArgument);
}

TEST(Adam, FirstStepMovesByLearningRate) {
  ParameterStore s;
  s.add("theta", ParamGroup::Head, Tensor::vector({ 0.0 }));
  Gradients g { { "theta" }, { Tensor::vector({ 1.0 }) } };
  AdamState state;
  OptimizerConfig cfg;
  adam_step(s, g, state, cfg);
  EXPECT_EQ(state.t, 1u);
  EXPECT_DOUBLE_EQ(state.m[0][0], 0.1);
  EXPECT_NEAR(s.value("theta")[0], -0.01 / (1.0 + 1e-7), 1e-15);
}

TEST(Adam, ZeroGradientAtZeroIsStationary) {
  ParameterStore s;
  s.add("theta", ParamGroup::Head, Tensor({ 3 }, 0.0));
  Gradients g { { "theta" }, { Tensor({ 3 }, 0.0) } };
  AdamState state = AdamState::zeros_like(s);
  for (int i = 0; i < 5; ++i) adam_step(s, g, state, {});
  for (double v: s.value("theta").data()) EXPECT_EQ(v, 0.0);
}

TEST(Adam, DeterministicTrajectories) {
  auto run = [] {
    ParameterStore s;
    s.add("theta", ParamGroup::Head, Tensor::vector({ 0.5, -0.25 }));
    AdamState state;
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
      Gradients g { { "theta" }, { Tensor::vector({ rng.uniform(-1, 1), rng.uniform(-1, 1) }) } };
      adam_step(s, g, state, {});
    }
    return s;
  };
  EXPECT_EQ(run(), run());
}

TEST(Adam, Errors) {
  ParameterStore s;
  s.add("theta", ParamGroup::Head, Tensor({ 2 }));
  AdamState state;
  Gradients wrong { { "theta" }, { Tensor({ 3 }) } };
  EXPECT_EQ(code_of([&] { adam_step(s, wrong, state, {}); }), ErrorCode::ShapeMismatch);
  OptimizerConfig cfg;
  cfg.learning_rate = 0.0;
  EXPECT_EQ(code_of([&] { cfg.validate(); }), ErrorCode::InvalidArgument);
  cfg = {};
  cfg.batch_size = 0;
  EXPECT_EQ(code_of([&] { cfg.validate(); }), ErrorCode::InvalidArgument);
}

Checkpoint sample_checkpoint() {
  const LayerSpec layers[] = { { "l0", ParamGroup::DrugEncoder, 3, 2, true }, { "l1", ParamGroup::Head, 2, 1, false } };
  return { "deepsynergy", R"({"dropout":0.5})", init_params(layers, 9) };
}

TEST(Checkpoint, RoundTripIsExact) {
  const Checkpoint c = sample_checkpoint();
  const Checkpoint d = decode_checkpoint(encode_checkpoint(c));
  EXPECT_EQ(d.model, c.model);
  EXPECT_EQ(d.hyperparameters, c.hyperparameters);
  EXPECT_EQ(d.params, c.params);

  testing::ScratchDir dir;
  save_checkpoint(dir / "m.ckpt", c);
  EXPECT_EQ(load_checkpoint(dir / "m.ckpt").params, c.params);
}

TEST(Checkpoint, RejectsCorruption) {
  const std::string bytes = encode_checkpoint(sample_checkpoint());
  EXPECT_EQ(code_of([&] { decode_checkpoint(bytes.substr(0, bytes.size() - 3)); }), ErrorCode::CheckpointFormat);
  EXPECT_EQ(code_of([&] { decode_checkpoint("XXXX" + bytes.substr(4)); }), ErrorCode::CheckpointFormat);
  EXPECT_EQ(code_of([&] { decode_checkpoint(bytes + "!"); }), ErrorCode::CheckpointFormat);
  std::string version = bytes;
  version[4] = 9;
  EXPECT_EQ(code_of([&] { decode_checkpoint(version); }), ErrorCode::CheckpointFormat);
  EXPECT_EQ(code_of([&] { decode_checkpoint(""); }), ErrorCode::CheckpointFormat);
  EXPECT_EQ(code_of([&] { load_checkpoint("/nonexistent/x.ckpt"); }), ErrorCode::FileNotFound);
}

}  // namespace
}  // namespace pairscore::neuro
