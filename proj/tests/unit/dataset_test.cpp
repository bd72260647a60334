//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <set>
#include <tuple>

#include "pairscore/dataset/feature_sets.hpp"
#include "pairscore/dataset/triples.hpp"
#include "pairscore/error.hpp"
#include "pairscore/rng.hpp"
#include "support/fixtures.hpp"

namespace pairscore::dataset {
namespace {

using testing::ScratchDir;

template <class F>
ErrorCode error_of(F &&f) {
  try {
    f();
  } catch (const Error &e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::IoError;
}

std::string ten_rows() {
  std::string s = "drug_1,drug_2,context,label\n";
  for (int i = 0; i < 10; ++i) s += "A" + std::to_string(i) + ",B" + std::to_string(i) + ",c," + std::to_string(i % 2) + "\n";
  return s;
}

TEST(DrugSet, LoadsValidRows) {
  ScratchDir dir;
  const auto p = dir.write("d.csv", "drug_id,smiles\nA,CCO\nB,c1ccccc1\nC,CC(=O)O\n");
  const DrugFeatureSet set = load_drug_set(p);
  EXPECT_EQ(set.size(), 3u);
  EXPECT_EQ(set.dropped(), 0u);
  EXPECT_EQ(set.ids(), (std::vector<std::string> { "A", "B", "C" }));
  EXPECT_EQ(set.fingerprint_width(), 256u);
  const DrugRecord &a = set.at("A");
  EXPECT_EQ(a.smiles, "CCO");
  EXPECT_EQ(a.atom_features.rows(), 3u);
  EXPECT_EQ(a.bond_features.rows(), 2u);
  // Loading is idempotent.
  EXPECT_EQ(load_drug_set(p), set);
}

TEST(DrugSet, DropsInvalidSmiles) {
  ScratchDir dir;
  const auto p = dir.write("d.csv", "drug_id,smiles\nA,CCO\nB,C1CC\nC,CN\n");
  const DrugFeatureSet set = load_drug_set(p);
  EXPECT_EQ(set.size(), 2u);
  EXPECT_EQ(set.dropped(), 1u);
  EXPECT_FALSE(set.contains("B"));

  const auto diags = featurize_file(p);
  ASSERT_EQ(diags.size(), 3u);
  EXPECT_TRUE(diags[0].ok);
  EXPECT_FALSE(diags[1].ok);
  EXPECT_EQ(diags[1].error, "UnmatchedRingBond");
  EXPECT_EQ(diags[0].atoms, 3u);
}

TEST(DrugSet, Errors) {
  ScratchDir dir;
  EXPECT_EQ(error_of([&] { load_drug_set(dir.write("a.csv", "drug_id,smiles\nA,C\nA,CC\n")); }),
            ErrorCode::DuplicateKey);
  EXPECT_EQ(error_of([&] { load_drug_set(dir.write("b.csv", "id,smiles\nA,C\n")); }),
            ErrorCode::MalformedHeader);
  EXPECT_EQ(error_of([&] { load_drug_set(dir.write("c.csv", "")); }), ErrorCode::EmptyDataset);
  EXPECT_EQ(error_of([&] { load_drug_set(dir / "missing.csv"); }), ErrorCode::FileNotFound);
  EXPECT_EQ(error_of([&] { DrugFeatureSet().at("nope"); }), ErrorCode::UnresolvableIdentifier);
}

TEST(ContextSet, LoadsAndValidates) {
  ScratchDir dir;
  const auto p = dir.write("c.csv", "context_id,f_1,f_2,f_3,f_4\nx,1,2,3,4\ny,0.5,0,0,-1\n");
  const ContextFeatureSet set = load_context_set(p);
  EXPECT_EQ(set.size(), 2u);
  EXPECT_EQ(set.width(), 4u);
  EXPECT_EQ(set.at("y"), (std::vector<double> { 0.5, 0, 0, -1 }));
  EXPECT_EQ(load_context_set(p), set);

  EXPECT_EQ(error_of([&] { load_context_set(dir.write("r.csv", "context_id,f_1,f_2,f_3,f_4\nx,1,2,3,4\ny,1,2,3\n")); }),
            ErrorCode::RaggedRows);
  EXPECT_EQ(error_of([&] { load_context_set(dir.write("e.csv", "")); }), ErrorCode::EmptyDataset);
  EXPECT_EQ(error_of([&] { load_context_set(dir.write("d.csv", "context_id,f_1\nx,1\nx,2\n")); }),
            ErrorCode::DuplicateKey);
}

TEST(Triples, LoadAndRoundTrip) {
  ScratchDir dir;
  const LabeledTriples y = load_triples(dir.write("t.csv", ten_rows()));
  EXPECT_EQ(y.size(), 10u);
  EXPECT_EQ(y.row(3), (Triple { "A3", "B3", "c", 1.0 }));
  write_triples(dir / "out.csv", y);
  EXPECT_EQ(load_triples(dir / "out.csv"), y);
}

TEST(Triples, Errors) {
  ScratchDir dir;
  EXPECT_EQ(error_of([&] { load_triples(dir.write("a.csv", "drug_1,drug_2,context,label\nA,B,c,1.5\n")); }),
            ErrorCode::LabelOutOfRange);
  EXPECT_EQ(error_of([&] { load_triples(dir.write("b.csv", "drug_1,drug_2,context,label\nA,B,c,1\nA,B,c,0\n")); }),
            ErrorCode::DuplicateTriple);
  EXPECT_EQ(error_of([&] { load_triples(dir.write("c.csv", "a,b,c,d\nA,B,c,1\n")); }),
            ErrorCode::MalformedHeader);
  EXPECT_EQ(error_of([&] { load_triples(dir.write("d.csv", "drug_1,drug_2,context,label\nA,B,c\n")); }),
            ErrorCode::RaggedRows);
}

TEST(Split, RatiosAndPartition) {
  ScratchDir dir;
  const LabeledTriples y = load_triples(dir.write("t.csv", ten_rows()));
  for (auto [size, n_train]: { std::pair { 0.5, 5u }, std::pair { 0.8, 8u } }) {
    const auto [train, test] = train_test_split(y, size, 3);
    EXPECT_EQ(train.size(), n_train);
    EXPECT_EQ(test.size(), 10u - n_train);
    std::multiset<std::string> all;
    for (std::size_t i = 0; i < train.size(); ++i) all.insert(train.drug_1(i));
    for (std::size_t i = 0; i < test.size(); ++i) all.insert(test.drug_1(i));
    EXPECT_EQ(all.size(), 10u);
    EXPECT_EQ(std::set<std::string>(all.begin(), all.end()).size(), 10u);
  }
  EXPECT_EQ(train_test_split(y, 0.8, 9), train_test_split(y, 0.8, 9));
  EXPECT_NE(train_test_split(y, 0.8, 9).first, train_test_split(y, 0.8, 10).first);
}

TEST(Split, PartitionHoldsForManySeeds) {
  const LabeledTriples y = testing::toy_triples(8, 2);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto [train, test] = train_test_split(y, 0.3 + 0.01 * static_cast<double>(seed), seed);
    EXPECT_EQ(train.size() + test.size(), y.size());
    for (std::size_t i = 0; i < test.size(); ++i) {
      EXPECT_FALSE(train.contains(test.drug_1(i), test.drug_2(i), test.context(i)));
      EXPECT_TRUE(y.contains(test.drug_1(i), test.drug_2(i), test.context(i)));
    }
  }
}

TEST(Split, Errors) {
  LabeledTriples one;
  one.add("A", "B", "c", 1);
  EXPECT_EQ(error_of([&] { train_test_split(one, 0.5, 0); }), ErrorCode::DegenerateSplit);
  EXPECT_EQ(error_of([&] { train_test_split(testing::toy_triples(), 1.0, 0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(error_of([&] { train_test_split(testing::toy_triples(), 0.0, 0); }), ErrorCode::InvalidArgument);
}

TEST(Negatives, ExhaustiveSmallCase) {
  LabeledTriples single;
  single.add("A", "B", "c", 1);
  single.add("B", "C", "x", 1);
  // Drugs {A,B,C} with positives (A,B,c) and (B,C,x): both negatives come
  // from the remaining unordered pairs.
  const LabeledTriples out = sample_negatives(single, 4);
  ASSERT_EQ(out.size(), 4u);
  for (std::size_t i = 2; i < 4; ++i) {
    EXPECT_EQ(out.label(i), 0.0);
    EXPECT_NE(out.drug_1(i), out.drug_2(i));
    const std::set<std::string> pair { out.drug_1(i), out.drug_2(i) };
    if (out.context(i) == "c") EXPECT_NE(pair, (std::set<std::string> { "A", "B" }));
    if (out.context(i) == "x") EXPECT_NE(pair, (std::set<std::string> { "B", "C" }));
  }
}

TEST(Negatives, OneCandidate) {
  LabeledTriples y;
  y.add("A", "B", "c", 1);
  y.add("A", "C", "d", 1);
  // Drugs {A,B,C}, contexts {c,d}: 6 unordered slots, 2 occupied.
  const LabeledTriples out = sample_negatives(y, 1);
  EXPECT_EQ(out.size(), 4u);
}

TEST(Negatives, InsufficientSpace) {
  LabeledTriples y;
  y.add("A", "B", "c", 1);
  EXPECT_EQ(error_of([&] { sample_negatives(y, 0); }), ErrorCode::InsufficientSpace);
}

TEST(Negatives, DisjointFromPositivesUnderUnorderedEquality) {
  LabeledTriples y;
  Rng rng(2);
  while (y.size() < 100) {
    const std::size_t a = rng.index(20), b = rng.index(20), c = rng.index(2);
    if (a == b) continue;
    const std::string da = "D" + std::to_string(a), db = "D" + std::to_string(b);
    const std::string ctx = "c" + std::to_string(c);
    if (y.contains(da, db, ctx) || y.contains(db, da, ctx)) continue;
    y.add(da, db, ctx, 1);
  }
  const LabeledTriples out = sample_negatives(y, 7);
  ASSERT_EQ(out.size(), 200u);
  std::set<std::tuple<std::string, std::string, std::string>> positives;
  for (std::size_t i = 0; i < 100; ++i) {
    positives.emplace(std::min(out.drug_1(i), out.drug_2(i)), std::max(out.drug_1(i), out.drug_2(i)), out.context(i));
  }
  for (std::size_t i = 100; i < 200; ++i) {
    EXPECT_EQ(out.label(i), 0.0);
    EXPECT_FALSE(positives.contains({ std::min(out.drug_1(i), out.drug_2(i)),
                                      std::max(out.drug_1(i), out.drug_2(i)), out.context(i) }));
  }
  EXPECT_EQ(sample_negatives(y, 7), out);
}

TEST(Negatives, RejectsNonPositiveInput) {
  LabeledTriples y;
  y.add("A", "B", "c", 0);
  EXPECT_EQ(error_of([&] { sample_negatives(y, 0); }), ErrorCode::InvalidArgument);
}

}  // namespace
}  // namespace pairscore::dataset
