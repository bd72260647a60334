//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "pairscore/batch/packed_graph.hpp"

#include <algorithm>

#include "pairscore/error.hpp"

namespace pairscore::batch {

std::vector<std::size_t> PackedGraph::node_owner() const {
  std::vector<std::size_t> owner(node_count());
  for (std::size_t g = 0; g < graph_count(); ++g) {
    std::fill_n(owner.begin() + static_cast<std::ptrdiff_t>(graph_offsets[g]),
                graph_sizes[g], g);
  }
  return owner;
}

PackedGraph pack_graphs(std::span<const GraphRef> graphs) {
  if (graphs.empty()) throw Error(ErrorCode::InvalidArgument, "no graphs to pack");

  const std::size_t node_width = graphs.front().node_features->cols();
  const std::size_t edge_width = graphs.front().edge_features->cols();
  std::size_t total_nodes = 0;
  std::size_t total_edges = 0;
  for (const GraphRef &g: graphs) {
    if (g.node_features->rows() != g.graph->atom_count()
        || g.edge_features->rows() != g.graph->bond_count()
        || g.node_features->cols() != node_width
        || g.edge_features->cols() != edge_width) {
      throw Error(ErrorCode::ShapeMismatch, "graph features disagree with structure");
    }
    total_nodes += g.graph->atom_count();
    total_edges += g.graph->bond_count();
  }

  PackedGraph out;
  out.node_features = Tensor({ total_nodes, node_width });
  out.edge_features = Tensor({ total_edges, edge_width });
  out.edges.reserve(total_edges);
  out.graph_offsets.reserve(graphs.size());
  out.graph_sizes.reserve(graphs.size());
  out.edge_offsets.reserve(graphs.size());
  out.edge_counts.reserve(graphs.size());

  std::size_t node_offset = 0;
  std::size_t edge_offset = 0;
  auto nodes_out = out.node_features.data();
  auto edges_out = out.edge_features.data();
  for (const GraphRef &g: graphs) {
    const std::size_t n = g.graph->atom_count();
    const std::size_t e = g.graph->bond_count();
    out.graph_offsets.push_back(node_offset);
    out.graph_sizes.push_back(n);
    out.edge_offsets.push_back(edge_offset);
    out.edge_counts.push_back(e);

    std::copy(g.node_features->data().begin(), g.node_features->data().end(),
              nodes_out.begin() + static_cast<std::ptrdiff_t>(node_offset * node_width));
    std::copy(g.edge_features->data().begin(), g.edge_features->data().end(),
              edges_out.begin() + static_cast<std::ptrdiff_t>(edge_offset * edge_width));
    for (const auto &bond: g.graph->bonds) {
      out.edges.emplace_back(static_cast<std::uint32_t>(bond.i + node_offset),
                             static_cast<std::uint32_t>(bond.j + node_offset));
    }
    node_offset += n;
    edge_offset += e;
  }
  return out;
}

std::vector<GraphBlock> unpack_graphs(const PackedGraph &packed) {
  const std::size_t node_width = packed.node_features.cols();
  const std::size_t edge_width = packed.edge_features.cols();
  std::vector<GraphBlock> out;
  out.reserve(packed.graph_count());
  for (std::size_t g = 0; g < packed.graph_count(); ++g) {
    const std::size_t n0 = packed.graph_offsets[g];
    const std::size_t n = packed.graph_sizes[g];
    const std::size_t e0 = packed.edge_offsets[g];
    const std::size_t e = packed.edge_counts[g];
    GraphBlock block;
    block.node_features = Tensor(
        { n, node_width },
        std::vector<double>(packed.node_features.data().begin() + static_cast<std::ptrdiff_t>(n0 * node_width),
                            packed.node_features.data().begin() + static_cast<std::ptrdiff_t>((n0 + n) * node_width)));
    block.edge_features = Tensor(
        { e, edge_width },
        std::vector<double>(packed.edge_features.data().begin() + static_cast<std::ptrdiff_t>(e0 * edge_width),
                            packed.edge_features.data().begin() + static_cast<std::ptrdiff_t>((e0 + e) * edge_width)));
    block.edges.reserve(e);
    for (std::size_t k = e0; k < e0 + e; ++k) {
      block.edges.emplace_back(packed.edges[k].first - static_cast<std::uint32_t>(n0),
                               packed.edges[k].second - static_cast<std::uint32_t>(n0));
    }
    out.push_back(std::move(block));
  }
  return out;
}

}  // namespace pairscore::batch
