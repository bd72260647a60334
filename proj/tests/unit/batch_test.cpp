//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <map>
#include <numeric>

#include "pairscore/batch/generator.hpp"
#include "pairscore/batch/packed_graph.hpp"
#include "pairscore/error.hpp"
#include "pairscore/molio/features.hpp"
#include "pairscore/molio/smiles.hpp"
#include "pairscore/pipeline/synthetic.hpp"
#include "support/fixtures.hpp"

namespace pairscore::batch {
namespace {

struct OwnedGraph {
  molio::MolecularGraph graph;
  Tensor nodes;
  Tensor edges;
  explicit OwnedGraph(std::string_view smiles)
      : graph(molio::parse_smiles(smiles)), nodes(molio::atom_features(graph)),
        edges(molio::bond_features(graph)) { }
  GraphRef ref() const { return { &graph, &nodes, &edges }; }
};

std::vector<GraphRef> refs_of(const std::vector<OwnedGraph> &gs) {
  std::vector<GraphRef> out;
  for (const auto &g: gs) out.push_back(g.ref());
  return out;
}

TEST(PackedGraph, OffsetsAndSizes) {
  std::vector<OwnedGraph> gs;
  gs.emplace_back("CCO");
  gs.emplace_back("CN");
  const PackedGraph p = pack_graphs(refs_of(gs));
  EXPECT_EQ(p.node_count(), 5u);
  EXPECT_EQ(p.graph_count(), 2u);
  EXPECT_EQ(p.graph_offsets, (std::vector<std::size_t> { 0, 3 }));
  EXPECT_EQ(p.graph_sizes, (std::vector<std::size_t> { 3, 2 }));
  EXPECT_EQ(p.edge_offsets, (std::vector<std::size_t> { 0, 2 }));
  EXPECT_EQ(p.edges.back(), (Edge { 3, 4 }));
  EXPECT_EQ(p.node_owner(), (std::vector<std::size_t> { 0, 0, 0, 1, 1 }));
}

TEST(PackedGraph, SingleGraphIsIdentity) {
  std::vector<OwnedGraph> gs;
  gs.emplace_back("c1ccccc1O");
  const PackedGraph p = pack_graphs(refs_of(gs));
  EXPECT_EQ(p.graph_offsets, (std::vector<std::size_t> { 0 }));
  EXPECT_EQ(p.node_features, gs[0].nodes);
  EXPECT_EQ(p.edge_features, gs[0].edges);
}

TEST(PackedGraph, UnpackInvertsPack) {
  Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<OwnedGraph> gs;
    const std::size_t n = 1 + rng.index(5);
    for (std::size_t i = 0; i < n; ++i) gs.emplace_back(pipeline::random_smiles(rng, 1, 8));
    const auto blocks = unpack_graphs(pack_graphs(refs_of(gs)));
    ASSERT_EQ(blocks.size(), n);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_EQ(blocks[i].node_features, gs[i].nodes);
      EXPECT_EQ(blocks[i].edge_features, gs[i].edges);
      ASSERT_EQ(blocks[i].edges.size(), gs[i].graph.bond_count());
      for (std::size_t e = 0; e < blocks[i].edges.size(); ++e) {
        EXPECT_EQ(blocks[i].edges[e].first, gs[i].graph.bonds[e].i);
        EXPECT_EQ(blocks[i].edges[e].second, gs[i].graph.bonds[e].j);
      }
    }
  }
}

TEST(PackedGraph, Errors) {
  EXPECT_THROW(pack_graphs({}), Error);
  OwnedGraph g("CCO");
  Tensor wrong({ 2, molio::kAtomFeatureWidth });
  const GraphRef bad { &g.graph, &wrong, &g.edges };
  EXPECT_THROW(pack_graphs(std::span<const GraphRef>(&bad, 1)), Error);
}

class GeneratorTest : public ::testing::Test {
 protected:
  dataset::DrugFeatureSet drugs = testing::toy_drugs();
  dataset::ContextFeatureSet contexts = testing::toy_contexts();

  dataset::LabeledTriples first(std::size_t n) const {
    const auto all = testing::toy_triples();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t { 0 });
    return all.subset(idx);
  }
};

TEST_F(GeneratorTest, BatchSizesCoverTheEpoch) {
  BatchGenerator gen(first(10), drugs, contexts, 4, {}, 1);
  EXPECT_EQ(gen.batches_per_epoch(), 3u);
  std::vector<std::size_t> sizes;
  for (const auto &b: gen.epoch(0)) sizes.push_back(b.size());
  EXPECT_EQ(sizes, (std::vector<std::size_t> { 4, 4, 2 }));
}

TEST_F(GeneratorTest, WorkedExampleBatchCount) {
  const auto y = testing::toy_triples();  // 56 triples
  BatchGenerator gen(y, drugs, contexts, 1024, {}, 0);
  EXPECT_EQ(gen.batches_per_epoch(), 1u);
  BatchGenerator small(y, drugs, contexts, 5, {}, 0);
  EXPECT_EQ(small.batches_per_epoch(), (y.size() + 4) / 5);
}

TEST_F(GeneratorTest, CollationMatchesDirectLookup) {
  BatchGenerator gen(testing::toy_triples(), drugs, contexts, 7, { true, true, true }, 3);
  for (const auto &b: gen.epoch(2)) {
    ASSERT_TRUE(b.context_features && b.drug_features_left && b.drug_features_right);
    ASSERT_TRUE(b.graphs_left && b.graphs_right);
    EXPECT_EQ(b.graphs_left->graph_count(), b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
      const auto &id = b.identifiers[i];
      const auto fp = drugs.at(id.drug_1).fingerprint.bits();
      for (std::size_t j = 0; j < fp.size(); ++j) {
        EXPECT_EQ((*b.drug_features_left)(i, j), static_cast<double>(fp[j]));
      }
      const auto fr = drugs.at(id.drug_2).fingerprint.bits();
      for (std::size_t j = 0; j < fr.size(); ++j) {
        EXPECT_EQ((*b.drug_features_right)(i, j), static_cast<double>(fr[j]));
      }
      const auto &ctx = contexts.at(id.context);
      for (std::size_t j = 0; j < ctx.size(); ++j) EXPECT_EQ((*b.context_features)(i, j), ctx[j]);
      EXPECT_EQ(b.graphs_left->graph_sizes[i], drugs.at(id.drug_1).graph.atom_count());
      EXPECT_EQ(b.labels[i], id.label);
    }
  }
}

TEST_F(GeneratorTest, FlagsControlFields) {
  BatchGenerator gen(first(4), drugs, contexts, 4, { false, false, true }, 0);
  const auto b = *gen.next();
  EXPECT_FALSE(b.context_features);
  EXPECT_FALSE(b.drug_features_left);
  EXPECT_TRUE(b.graphs_left);
  EXPECT_FALSE(gen.next());
}

TEST_F(GeneratorTest, SeededShuffleIsDeterministic) {
  auto order = [&](std::uint64_t seed, std::uint64_t epoch) {
    BatchGenerator gen(testing::toy_triples(), drugs, contexts, 8, {}, seed);
    std::vector<dataset::Triple> ids;
    for (const auto &b: gen.epoch(epoch)) ids.insert(ids.end(), b.identifiers.begin(), b.identifiers.end());
    return ids;
  };
  EXPECT_EQ(order(1, 0), order(1, 0));
  EXPECT_NE(order(1, 0), order(2, 0));
  EXPECT_NE(order(1, 0), order(1, 1));
  auto a = order(1, 0), b = order(2, 0);
  auto less = [](const dataset::Triple &x, const dataset::Triple &y) {
    return std::tie(x.drug_1, x.drug_2, x.context) < std::tie(y.drug_1, y.drug_2, y.context);
  };
  std::sort(a.begin(), a.end(), less);
  std::sort(b.begin(), b.end(), less);
  EXPECT_EQ(a, b);
}

TEST_F(GeneratorTest, UnshuffledKeepsFileOrder) {
  const auto y = first(9);
  BatchGenerator gen(y, drugs, contexts, 4, {}, 0, false);
  std::size_t i = 0;
  for (const auto &b: gen.epoch(5)) {
    for (const auto &id: b.identifiers) EXPECT_EQ(id, y.row(i++));
  }
  EXPECT_EQ(i, 9u);
}

TEST_F(GeneratorTest, EpochCoverageProperty) {
  Rng rng(4);
  const auto all = testing::toy_triples();
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng.index(all.size());
    const std::size_t bs = 1 + rng.index(20);
    BatchGenerator gen(first(n), drugs, contexts, bs, {}, trial);
    std::map<std::string, int> seen;
    std::size_t batches = 0;
    for (const auto &b: gen.epoch(trial)) {
      ++batches;
      for (const auto &id: b.identifiers) ++seen[id.drug_1 + "|" + id.drug_2 + "|" + id.context];
    }
    EXPECT_EQ(batches, (n + bs - 1) / bs);
    EXPECT_EQ(seen.size(), n);
    for (const auto &[k, c]: seen) EXPECT_EQ(c, 1) << k;
  }
}

TEST_F(GeneratorTest, Errors) {
  EXPECT_THROW(BatchGenerator(first(3), drugs, contexts, 0, {}, 0), Error);
  dataset::LabeledTriples y;
  y.add("D0", "Nope", "C0", 1);
  try {
    BatchGenerator(y, drugs, contexts, 2, {}, 0);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::UnresolvableIdentifier);
  }
  dataset::LabeledTriples z;
  z.add("D0", "D1", "Cx", 1);
  EXPECT_THROW(BatchGenerator(z, drugs, contexts, 2, {}, 0), Error);
  // Contexts are not resolved when the wiring does not read them.
  EXPECT_NO_THROW(BatchGenerator(z, drugs, contexts, 2, { false, true, false }, 0));
}

}  // namespace
}  // namespace pairscore::batch
