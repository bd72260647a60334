//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PAIRSCORE_NEURO_ADAM_HPP_
#define PAIRSCORE_NEURO_ADAM_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pairscore/neuro/parameters.hpp"
#include "pairscore/tensor.hpp"

namespace pairscore::neuro {

/// Training settings; the defaults are the reference training settings.
struct OptimizerConfig {
  double learning_rate = 1e-2;
  double weight_decay = 1e-5;
  double beta1 = 0.9;
  double beta2 = 0.99;
  double epsilon = 1e-7;
  double dropout_rate = 0.5;
  std::size_t batch_size = 4096;
  std::size_t epochs = 50;

  /// Throws InvalidArgument when a setting is out of range.
  void validate() const;
};

/// First and second moments aligned with a ParameterStore.
struct AdamState {
  std::vector<Tensor> m;
  std::vector<Tensor> v;
  std::uint64_t t = 0;

  static AdamState zeros_like(const ParameterStore &store);
};

/// One Adam update with L2 weight decay folded into the gradient
/// (g <- g + lambda * theta). Throws ShapeMismatch.
void adam_step(ParameterStore &params, const Gradients &grads, AdamState &state,
               const OptimizerConfig &cfg);

}  // namespace pairscore::neuro

#endif  // PAIRSCORE_NEURO_ADAM_HPP_
