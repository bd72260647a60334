//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PAIRSCORE_BATCH_PACKED_GRAPH_HPP_
#define PAIRSCORE_BATCH_PACKED_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pairscore/molio/smiles.hpp"
#include "pairscore/tensor.hpp"

namespace pairscore::batch {

using Edge = std::pair<std::uint32_t, std::uint32_t>;

/// One molecule's graph together with its feature matrices.
struct GraphBlock {
  std::vector<Edge> edges;
  Tensor node_features;  // N x F_N
  Tensor edge_features;  // E x F_E

  bool operator==(const GraphBlock &) const = default;
};

/// Non-owning view of a graph to pack.
struct GraphRef {
  const molio::MolecularGraph *graph;
  const Tensor *node_features;
  const Tensor *edge_features;
};

/// Several graphs laid out as one block-diagonal graph. Node rows of graph g
/// occupy [graph_offsets[g], graph_offsets[g] + graph_sizes[g]); edge
/// endpoints are already shifted into that global numbering.
struct PackedGraph {
  Tensor node_features;  // sum N_i x F_N
  Tensor edge_features;  // sum E_i x F_E
  std::vector<Edge> edges;
  std::vector<std::size_t> graph_offsets;
  std::vector<std::size_t> graph_sizes;
  std::vector<std::size_t> edge_offsets;
  std::vector<std::size_t> edge_counts;

  std::size_t graph_count() const noexcept { return graph_sizes.size(); }
  std::size_t node_count() const noexcept { return node_features.rows(); }

  /// Index of the graph owning each node row.
  std::vector<std::size_t> node_owner() const;
};

/// Concatenates graphs in input order. Throws InvalidArgument on an empty
/// list and ShapeMismatch on inconsistent feature widths.
PackedGraph pack_graphs(std::span<const GraphRef> graphs);

/// Inverse of pack_graphs.
std::vector<GraphBlock> unpack_graphs(const PackedGraph &packed);

}  // namespace pairscore::batch

#endif  // PAIRSCORE_BATCH_PACKED_GRAPH_HPP_
