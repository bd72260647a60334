//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PAIRSCORE_NEURO_TAPE_HPP_
#define PAIRSCORE_NEURO_TAPE_HPP_

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "pairscore/batch/packed_graph.hpp"
#include "pairscore/neuro/parameters.hpp"
#include "pairscore/rng.hpp"
#include "pairscore/tensor.hpp"

namespace pairscore::neuro {

/// Handle to a value recorded on a Tape.
struct Var {
  std::size_t id = 0;
};

class Tape;

/// Propagates the gradient of node `self` into its parents.
using BackwardFn = std::function<void(Tape &tape, std::size_t self)>;

/// Records a forward computation for one reverse-mode sweep. Values are
/// immutable once recorded; a tape is used by one thread and discarded after
/// backward().
class Tape {
 public:
  Var constant(Tensor value);
  /// Constant leaf that references `value` instead of copying it; `value`
  /// must outlive the tape.
  Var borrow(const Tensor &value);

  /// Leaf bound to a stored parameter; the tensor is referenced, not copied,
  /// so the store must outlive the tape.
  Var parameter(const ParameterStore &store, std::string_view name);

  const Tensor &value(Var v) const;
  bool requires_grad(Var v) const { return nodes_[v.id].requires_grad; }

  /// Gradient buffer of `v`, zero-initialised on first access.
  Tensor &grad(Var v);

  std::size_t size() const noexcept { return nodes_.size(); }

  /// Records an op output. The node requires a gradient iff a parent does.
  Var record(Tensor value, std::vector<Var> parents, BackwardFn backward);

 private:
  friend Gradients backward(Tape &tape, Var loss, const ParameterStore &store);

  struct Node {
    Tensor value;
    const Tensor *external = nullptr;
    Tensor grad;
    std::vector<std::size_t> parents;
    BackwardFn backward;
    bool requires_grad = false;
    const ParameterStore *store = nullptr;
    std::size_t param_index = 0;
  };

  std::vector<Node> nodes_;
};

/// Exact reverse-mode gradients of scalar `loss` for every parameter of
/// `store`. Throws ShapeMismatch if `loss` is not a scalar and
/// DisconnectedParameter if some parameter cannot influence it.
Gradients backward(Tape &tape, Var loss, const ParameterStore &store);

/// Symmetric-normalised adjacency with self loops, D^-1/2 (A + I) D^-1/2,
/// for a packed block-diagonal graph, stored row-compressed.
struct GcnAdjacency {
  std::vector<std::size_t> row_start;
  std::vector<std::size_t> column;
  std::vector<double> weight;

  std::size_t node_count() const noexcept { return row_start.empty() ? 0 : row_start.size() - 1; }
};

std::shared_ptr<const GcnAdjacency> make_gcn_adjacency(const batch::PackedGraph &graph);

/// Per-graph row ranges for readout.
struct PoolIndex {
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> sizes;
};

// Differentiable operations. All throw ShapeMismatch on non-conforming input.

/// x (B x in) * W (in x out) + b (out).
Var linear(Tape &tape, Var x, Var weight, Var bias);
Var matmul(Tape &tape, Var a, Var b);
Var relu(Tape &tape, Var x);
Var sigmoid(Tape &tape, Var x);
Var add(Tape &tape, Var a, Var b);

/// Inverted dropout: zeroes entries with probability `rate` and scales the
/// rest by 1 / (1 - rate). Returns `x` itself when not training.
Var dropout(Tape &tape, Var x, double rate, bool training, Rng &rng);

/// Concatenates rank-2 values along axis 0 (rows) or 1 (columns).
Var concat(Tape &tape, std::span<const Var> xs, std::size_t axis);

/// A_hat * H * W over a packed graph; no cross-graph mixing.
Var gcn_conv(Tape &tape, std::shared_ptr<const GcnAdjacency> adjacency, Var h, Var weight);
Var gcn_conv(Tape &tape, const batch::PackedGraph &graph, Var h, Var weight);

/// Row g is the mean of the node rows of graph g.
Var mean_pool(Tape &tape, const PoolIndex &index, Var h);
Var mean_pool(Tape &tape, const batch::PackedGraph &graph, Var h);

/// Probability clamp used by bce_loss.
inline constexpr double kProbabilityClamp = 1e-7;

/// Mean binary cross-entropy of predictions (B or B x 1) against targets.
Var bce_loss(Tape &tape, Var prediction, std::span<const double> targets);

/// Sum of x * w elementwise; a scalar probe for gradient checks.
Var weighted_sum(Tape &tape, Var x, const Tensor &weights);

}  // namespace pairscore::neuro

#endif  // PAIRSCORE_NEURO_TAPE_HPP_
