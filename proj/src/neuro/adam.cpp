//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "pairscore/neuro/adam.hpp"

#include <cmath>

#include "pairscore/error.hpp"

namespace pairscore::neuro {

void OptimizerConfig::validate() const {
  auto in_unit = [](double x) { return x > 0.0 && x < 1.0; };
  if (!in_unit(learning_rate)) throw Error(ErrorCode::InvalidArgument, "learning_rate must lie in (0, 1)");
  if (!(weight_decay >= 0.0 && weight_decay < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "weight_decay must lie in [0, 1)");
  }
  if (!in_unit(beta1) || !in_unit(beta2)) throw Error(ErrorCode::InvalidArgument, "betas must lie in (0, 1)");
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "dropout_rate must lie in [0, 1)");
  }
  if (batch_size == 0) throw Error(ErrorCode::InvalidArgument, "batch_size must be >= 1");
}

AdamState AdamState::zeros_like(const ParameterStore &store) {
  AdamState s;
  for (const Parameter &p: store) {
    s.m.emplace_back(p.value.shape());
    s.v.emplace_back(p.value.shape());
  }
  return s;
}

void adam_step(ParameterStore &params, const Gradients &grads, AdamState &state,
               const OptimizerConfig &cfg) {
  if (state.m.empty() && state.t == 0) state = AdamState::zeros_like(params);
  if (grads.size() != params.size() || state.m.size() != params.size()
      || state.v.size() != params.size()) {
    throw Error(ErrorCode::ShapeMismatch, "adam_step: gradient/state count differs from parameters");
  }
  ++state.t;
  const double t = static_cast<double>(state.t);
  const double c1 = 1.0 - std::pow(cfg.beta1, t);
  const double c2 = 1.0 - std::pow(cfg.beta2, t);
  for (std::size_t p = 0; p < params.size(); ++p) {
    Tensor &theta = params[p].value;
    const Tensor &g = grads.values[p];
    Tensor &m = state.m[p];
    Tensor &v = state.v[p];
    if (g.shape() != theta.shape() || m.shape() != theta.shape() || v.shape() != theta.shape()) {
      throw Error(ErrorCode::ShapeMismatch, "adam_step: '" + params[p].name + "' "
                                                + shape_string(theta.shape()) + " vs gradient "
                                                + shape_string(g.shape()));
    }
    for (std::size_t i = 0; i < theta.size(); ++i) {
      const double gi = g[i] + cfg.weight_decay * theta[i];
      m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * gi;
      v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * gi * gi;
      const double m_hat = m[i] / c1;
      const double v_hat = v[i] / c2;
      theta[i] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
    }
  }
}

}  // namespace pairscore::neuro
