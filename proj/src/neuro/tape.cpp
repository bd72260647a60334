//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "pairscore/neuro/tape.hpp"

#include <algorithm>
#include <cmath>

#include "pairscore/error.hpp"

namespace pairscore::neuro {
namespace {
[[noreturn]] void shape_error(std::string_view op, const Tensor &a, const Tensor &b) {
  throw Error(ErrorCode::ShapeMismatch,
              std::string(op) + ": " + shape_string(a.shape()) + " vs "
                  + shape_string(b.shape()));
}

void require_matrix(std::string_view op, const Tensor &x) {
  if (x.rank() != 2) {
    throw Error(ErrorCode::ShapeMismatch,
                std::string(op) + " expects a matrix, got " + shape_string(x.shape()));
  }
}

// out = A_hat * x for a row-compressed symmetric operator.
Tensor sparse_apply(const GcnAdjacency &adj, const Tensor &x) {
  const std::size_t f = x.cols();
  Tensor out({ adj.node_count(), f });
  for (std::size_t i = 0; i < adj.node_count(); ++i) {
    auto dst = out.row(i);
    for (std::size_t k = adj.row_start[i]; k < adj.row_start[i + 1]; ++k) {
      const double w = adj.weight[k];
      auto src = x.row(adj.column[k]);
      for (std::size_t c = 0; c < f; ++c) dst[c] += w * src[c];
    }
  }
  return out;
}
}  // namespace

Var Tape::constant(Tensor value) {
  Node node;
  node.value = std::move(value);
  nodes_.push_back(std::move(node));
  return Var { nodes_.size() - 1 };
}

Var Tape::borrow(const Tensor &value) {
  Node node;
  node.external = &value;
  nodes_.push_back(std::move(node));
  return Var { nodes_.size() - 1 };
}

Var Tape::parameter(const ParameterStore &store, std::string_view name) {
  Node node;
  node.param_index = store.require(name);
  node.store = &store;
  node.external = &store[node.param_index].value;
  node.requires_grad = true;
  nodes_.push_back(std::move(node));
  return Var { nodes_.size() - 1 };
}

const Tensor &Tape::value(Var v) const {
  const Node &n = nodes_.at(v.id);
  return n.external != nullptr ? *n.external : n.value;
}

Tensor &Tape::grad(Var v) {
  Node &n = nodes_.at(v.id);
  if (n.grad.empty() && !value(v).empty()) n.grad = Tensor(value(v).shape());
  return n.grad;
}

Var Tape::record(Tensor value, std::vector<Var> parents, BackwardFn backward) {
  Node node;
  node.value = std::move(value);
  node.parents.reserve(parents.size());
  for (Var p: parents) {
    node.parents.push_back(p.id);
    node.requires_grad = node.requires_grad || nodes_.at(p.id).requires_grad;
  }
  if (node.requires_grad) node.backward = std::move(backward);
  nodes_.push_back(std::move(node));
  return Var { nodes_.size() - 1 };
}

Gradients backward(Tape &tape, Var loss, const ParameterStore &store) {
  if (tape.value(loss).size() != 1) {
    throw Error(ErrorCode::ShapeMismatch,
                "backward needs a scalar loss, got " + shape_string(tape.value(loss).shape()));
  }
  auto &nodes = tape.nodes_;
  std::vector<char> reachable(loss.id + 1, 0);
  reachable[loss.id] = 1;
  for (std::size_t i = loss.id + 1; i-- > 0;) {
    if (reachable[i] == 0) continue;
    for (std::size_t p: nodes[i].parents) reachable[p] = 1;
  }

  tape.grad(loss).fill(1.0);
  for (std::size_t i = loss.id + 1; i-- > 0;) {
    Tape::Node &n = nodes[i];
    if (reachable[i] == 0 || !n.requires_grad || !n.backward || n.grad.empty()) continue;
    n.backward(tape, i);
  }

  Gradients out;
  out.names.reserve(store.size());
  out.values.reserve(store.size());
  std::vector<char> connected(store.size(), 0);
  for (std::size_t p = 0; p < store.size(); ++p) {
    out.names.push_back(store[p].name);
    out.values.emplace_back(store[p].value.shape());
  }
  for (std::size_t i = 0; i <= loss.id; ++i) {
    const Tape::Node &n = nodes[i];
    if (n.store != &store || reachable[i] == 0) continue;
    connected[n.param_index] = 1;
    if (!n.grad.empty()) accumulate(out.values[n.param_index], n.grad);
  }
  for (std::size_t p = 0; p < store.size(); ++p) {
    if (connected[p] == 0) {
      throw Error(ErrorCode::DisconnectedParameter,
                  "parameter '" + store[p].name + "' does not reach the loss");
    }
  }
  return out;
}

std::shared_ptr<const GcnAdjacency> make_gcn_adjacency(const batch::PackedGraph &graph) {
  const std::size_t n = graph.node_count();
  std::vector<std::vector<std::size_t>> nbrs(n);
  for (const auto &[a, b]: graph.edges) {
    nbrs[a].push_back(b);
    nbrs[b].push_back(a);
  }
  std::vector<double> inv_sqrt_degree(n);
  for (std::size_t i = 0; i < n; ++i) {
    inv_sqrt_degree[i] = 1.0 / std::sqrt(static_cast<double>(nbrs[i].size() + 1));
  }

  auto adj = std::make_shared<GcnAdjacency>();
  adj->row_start.reserve(n + 1);
  adj->row_start.push_back(0);
  for (std::size_t i = 0; i < n; ++i) {
    auto &row = nbrs[i];
    row.push_back(i);
    std::sort(row.begin(), row.end());
    for (std::size_t j: row) {
      adj->column.push_back(j);
      adj->weight.push_back(inv_sqrt_degree[i] * inv_sqrt_degree[j]);
    }
    adj->row_start.push_back(adj->column.size());
  }
  return adj;
}

Var matmul(Tape &tape, Var a, Var b) {
  const Tensor &av = tape.value(a);
  const Tensor &bv = tape.value(b);
  require_matrix("matmul", av);
  require_matrix("matmul", bv);
  if (av.cols() != bv.rows()) shape_error("matmul", av, bv);
  Tensor out;
  gemm(av, false, bv, false, out);
  return tape.record(std::move(out), { a, b }, [a, b](Tape &t, std::size_t self) {
    const Tensor &g = t.grad(Var { self });
    if (t.requires_grad(a)) gemm(g, false, t.value(b), true, t.grad(a), 1.0);
    if (t.requires_grad(b)) gemm(t.value(a), true, g, false, t.grad(b), 1.0);
  });
}

Var linear(Tape &tape, Var x, Var weight, Var bias) {
  const Tensor &xv = tape.value(x);
  const Tensor &wv = tape.value(weight);
  const Tensor &bv = tape.value(bias);
  require_matrix("linear", xv);
  require_matrix("linear", wv);
  if (xv.cols() != wv.rows()) shape_error("linear", xv, wv);
  if (bv.rank() != 1 || bv.size() != wv.cols()) shape_error("linear bias", wv, bv);

  Tensor out({ xv.rows(), wv.cols() });
  for (std::size_t r = 0; r < out.rows(); ++r) {
    std::copy(bv.data().begin(), bv.data().end(), out.row(r).begin());
  }
  gemm(xv, false, wv, false, out, 1.0);
  return tape.record(std::move(out), { x, weight, bias },
                     [x, weight, bias](Tape &t, std::size_t self) {
    const Tensor &g = t.grad(Var { self });
    if (t.requires_grad(x)) gemm(g, false, t.value(weight), true, t.grad(x), 1.0);
    if (t.requires_grad(weight)) gemm(t.value(x), true, g, false, t.grad(weight), 1.0);
    if (t.requires_grad(bias)) {
      Tensor &gb = t.grad(bias);
      for (std::size_t r = 0; r < g.rows(); ++r) {
        auto row = g.row(r);
        for (std::size_t c = 0; c < row.size(); ++c) gb[c] += row[c];
      }
    }
  });
}

Var relu(Tape &tape, Var x) {
  Tensor out = tape.value(x);
  for (double &v: out.data()) v = v > 0.0 ? v : 0.0;
  return tape.record(std::move(out), { x }, [x](Tape &t, std::size_t self) {
    const Tensor &g = t.grad(Var { self });
    const Tensor &in = t.value(x);
    Tensor &gx = t.grad(x);
    const double *gp = g.data().data();
    const double *ip = in.data().data();
    double *out = gx.data().data();
    // Branch-free so that the ~50% sign pattern does not stall the loop.
    for (std::size_t i = 0; i < g.size(); ++i) out[i] += ip[i] > 0.0 ? gp[i] : 0.0;
  });
}

Var sigmoid(Tape &tape, Var x) {
  Tensor out = tape.value(x);
  for (double &v: out.data()) {
    // Branch on sign so that exp never overflows.
    if (v >= 0.0) {
      v = 1.0 / (1.0 + std::exp(-v));
    } else {
      const double e = std::exp(v);
      v = e / (1.0 + e);
    }
  }
  return tape.record(std::move(out), { x }, [x](Tape &t, std::size_t self) {
    const Tensor &g = t.grad(Var { self });
    const Tensor &y = t.value(Var { self });
    Tensor &gx = t.grad(x);
    for (std::size_t i = 0; i < g.size(); ++i) gx[i] += g[i] * y[i] * (1.0 - y[i]);
  });
}

Var add(Tape &tape, Var a, Var b) {
  const Tensor &av = tape.value(a);
  const Tensor &bv = tape.value(b);
  if (av.shape() != bv.shape()) shape_error("add", av, bv);
  Tensor out = av;
  accumulate(out, bv);
  return tape.record(std::move(out), { a, b }, [a, b](Tape &t, std::size_t self) {
    const Tensor &g = t.grad(Var { self });
    if (t.requires_grad(a)) accumulate(t.grad(a), g);
    if (t.requires_grad(b)) accumulate(t.grad(b), g);
  });
}

Var dropout(Tape &tape, Var x, double rate, bool training, Rng &rng) {
  if (!(rate >= 0.0 && rate < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "dropout rate must lie in [0, 1)");
  }
  if (!training || rate == 0.0) return x;
  const double scale = 1.0 / (1.0 - rate);
  Tensor mask(tape.value(x).shape());
  for (double &m: mask.data()) m = rng.uniform() >= rate ? scale : 0.0;
  Tensor out = tape.value(x);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= mask[i];
  return tape.record(std::move(out), { x },
                     [x, mask = std::move(mask)](Tape &t, std::size_t self) {
    const Tensor &g = t.grad(Var { self });
    Tensor &gx = t.grad(x);
    for (std::size_t i = 0; i < g.size(); ++i) gx[i] += g[i] * mask[i];
  });
}

Var concat(Tape &tape, std::span<const Var> xs, std::size_t axis) {
  if (xs.empty()) throw Error(ErrorCode::InvalidArgument, "concat of nothing");
  if (axis > 1) throw Error(ErrorCode::InvalidArgument, "concat axis must be 0 or 1");
  const Tensor &first = tape.value(xs[0]);
  require_matrix("concat", first);
  std::size_t rows = 0;
  std::size_t cols = 0;
  for (Var v: xs) {
    const Tensor &t = tape.value(v);
    require_matrix("concat", t);
    if (axis == 1) {
      if (t.rows() != first.rows()) shape_error("concat", first, t);
      cols += t.cols();
    } else {
      if (t.cols() != first.cols()) shape_error("concat", first, t);
      rows += t.rows();
    }
  }
  if (axis == 1) rows = first.rows();
  else cols = first.cols();

  Tensor out({ rows, cols });
  std::size_t offset = 0;
  for (Var v: xs) {
    const Tensor &t = tape.value(v);
    for (std::size_t r = 0; r < t.rows(); ++r) {
      auto src = t.row(r);
      if (axis == 1) {
        std::copy(src.begin(), src.end(), out.row(r).begin() + static_cast<std::ptrdiff_t>(offset));
      } else {
        std::copy(src.begin(), src.end(), out.row(offset + r).begin());
      }
    }
    offset += axis == 1 ? t.cols() : t.rows();
  }

  std::vector<Var> parents(xs.begin(), xs.end());
  return tape.record(std::move(out), parents, [parents, axis](Tape &t, std::size_t self) {
    const Tensor &g = t.grad(Var { self });
    std::size_t offset = 0;
    for (Var v: parents) {
      const std::size_t r_n = t.value(v).rows();
      const std::size_t c_n = t.value(v).cols();
      if (t.requires_grad(v)) {
        Tensor &gv = t.grad(v);
        for (std::size_t r = 0; r < r_n; ++r) {
          auto dst = gv.row(r);
          const double *src = axis == 1 ? g.row(r).data() + offset : g.row(offset + r).data();
          for (std::size_t c = 0; c < c_n; ++c) dst[c] += src[c];
        }
      }
      offset += axis == 1 ? c_n : r_n;
    }
  });
}

Var gcn_conv(Tape &tape, std::shared_ptr<const GcnAdjacency> adjacency, Var h, Var weight) {
  const Tensor &hv = tape.value(h);
  const Tensor &wv = tape.value(weight);
  require_matrix("gcn_conv", hv);
  require_matrix("gcn_conv", wv);
  if (hv.rows() != adjacency->node_count()) {
    throw Error(ErrorCode::ShapeMismatch,
                "gcn_conv: " + std::to_string(hv.rows()) + " feature rows for "
                    + std::to_string(adjacency->node_count()) + " nodes");
  }
  if (hv.cols() != wv.rows()) shape_error("gcn_conv", hv, wv);

  Tensor hw;
  gemm(hv, false, wv, false, hw);
  Tensor out = sparse_apply(*adjacency, hw);
  return tape.record(std::move(out), { h, weight },
                     [adjacency, h, weight](Tape &t, std::size_t self) {
    // A_hat is symmetric, so its transpose is itself.
    const Tensor g_hw = sparse_apply(*adjacency, t.grad(Var { self }));
    if (t.requires_grad(weight)) gemm(t.value(h), true, g_hw, false, t.grad(weight), 1.0);
    if (t.requires_grad(h)) gemm(g_hw, false, t.value(weight), true, t.grad(h), 1.0);
  });
}

Var gcn_conv(Tape &tape, const batch::PackedGraph &graph, Var h, Var weight) {
  return gcn_conv(tape, make_gcn_adjacency(graph), h, weight);
}

Var mean_pool(Tape &tape, const PoolIndex &index, Var h) {
  const Tensor &hv = tape.value(h);
  require_matrix("mean_pool", hv);
  std::size_t total = 0;
  for (std::size_t s: index.sizes) total += s;
  if (total != hv.rows() || index.offsets.size() != index.sizes.size()) {
    throw Error(ErrorCode::ShapeMismatch,
                "mean_pool: " + std::to_string(hv.rows()) + " rows for "
                    + std::to_string(total) + " pooled nodes");
  }
  const std::size_t f = hv.cols();
  Tensor out({ index.sizes.size(), f });
  for (std::size_t g = 0; g < index.sizes.size(); ++g) {
    auto dst = out.row(g);
    for (std::size_t r = index.offsets[g]; r < index.offsets[g] + index.sizes[g]; ++r) {
      auto src = hv.row(r);
      for (std::size_t c = 0; c < f; ++c) dst[c] += src[c];
    }
    const double inv = index.sizes[g] == 0 ? 0.0 : 1.0 / static_cast<double>(index.sizes[g]);
    for (double &v: dst) v *= inv;
  }
  return tape.record(std::move(out), { h }, [index, h](Tape &t, std::size_t self) {
    const Tensor &g = t.grad(Var { self });
    Tensor &gh = t.grad(h);
    for (std::size_t k = 0; k < index.sizes.size(); ++k) {
      if (index.sizes[k] == 0) continue;
      const double inv = 1.0 / static_cast<double>(index.sizes[k]);
      auto src = g.row(k);
      for (std::size_t r = index.offsets[k]; r < index.offsets[k] + index.sizes[k]; ++r) {
        auto dst = gh.row(r);
        for (std::size_t c = 0; c < src.size(); ++c) dst[c] += src[c] * inv;
      }
    }
  });
}

Var mean_pool(Tape &tape, const batch::PackedGraph &graph, Var h) {
  return mean_pool(tape, PoolIndex { graph.graph_offsets, graph.graph_sizes }, h);
}

Var bce_loss(Tape &tape, Var prediction, std::span<const double> targets) {
  const Tensor &p = tape.value(prediction);
  if (p.size() != targets.size() || (p.rank() == 2 && p.cols() != 1) || p.rank() > 2) {
    throw Error(ErrorCode::ShapeMismatch,
                "bce_loss: predictions " + shape_string(p.shape()) + " for "
                    + std::to_string(targets.size()) + " targets");
  }
  if (targets.empty()) throw Error(ErrorCode::ShapeMismatch, "bce_loss on an empty batch");
  constexpr double lo = kProbabilityClamp;
  constexpr double hi = 1.0 - kProbabilityClamp;
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double q = std::clamp(p[i], lo, hi);
    const double y = targets[i];
    total -= y * std::log(q) + (1.0 - y) * std::log(1.0 - q);
  }
  const double n = static_cast<double>(p.size());
  std::vector<double> y(targets.begin(), targets.end());
  return tape.record(Tensor::scalar(total / n), { prediction },
                     [prediction, y = std::move(y), n](Tape &t, std::size_t self) {
    const double g = t.grad(Var { self })[0];
    const Tensor &pv = t.value(prediction);
    Tensor &gp = t.grad(prediction);
    for (std::size_t i = 0; i < pv.size(); ++i) {
      const double q = pv[i];
      if (q <= lo || q >= hi) continue;  // clamped: flat
      gp[i] += g * (-y[i] / q + (1.0 - y[i]) / (1.0 - q)) / n;
    }
  });
}

Var weighted_sum(Tape &tape, Var x, const Tensor &weights) {
  const Tensor &xv = tape.value(x);
  if (xv.size() != weights.size()) shape_error("weighted_sum", xv, weights);
  double total = 0.0;
  for (std::size_t i = 0; i < xv.size(); ++i) total += xv[i] * weights[i];
  return tape.record(Tensor::scalar(total), { x }, [x, weights](Tape &t, std::size_t self) {
    const double g = t.grad(Var { self })[0];
    Tensor &gx = t.grad(x);
    for (std::size_t i = 0; i < gx.size(); ++i) gx[i] += g * weights[i];
  });
}

}  // namespace pairscore::neuro
