//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

// Scratch directories and small in-memory datasets for tests.

#ifndef PAIRSCORE_TESTS_FIXTURES_HPP_
#define PAIRSCORE_TESTS_FIXTURES_HPP_

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "pairscore/dataset/feature_sets.hpp"
#include "pairscore/dataset/triples.hpp"

namespace pairscore::testing {

/// A fresh directory under the system temp dir, removed on destruction.
class ScratchDir {
 public:
  ScratchDir() {
    static std::atomic<int> counter { 0 };
    path_ = std::filesystem::temp_directory_path()
            / ("pairscore-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir &) = delete;
  ScratchDir &operator=(const ScratchDir &) = delete;

  std::filesystem::path operator/(const std::string &name) const { return path_ / name; }
  const std::filesystem::path &path() const { return path_; }

  std::filesystem::path write(const std::string &name, const std::string &text) const {
    const auto p = path_ / name;
    std::ofstream(p, std::ios::trunc) << text;
    return p;
  }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path &p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::size_t line_count(const std::filesystem::path &p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) n += line.empty() ? 0 : 1;
  return n;
}

/// Small molecules with a mix of rings, branches and heteroatoms.
inline const std::vector<std::string> &toy_smiles() {
  static const std::vector<std::string> s = {
    "CCO", "c1ccccc1O", "CC(=O)N", "C1CCNCC1", "OC(=O)c1ccccc1", "CCS", "FC(F)Cl", "N#CC",
  };
  return s;
}

inline dataset::DrugFeatureSet toy_drugs(std::size_t n = 8) {
  dataset::DrugFeatureSet drugs;
  for (std::size_t i = 0; i < n; ++i) {
    drugs.insert("D" + std::to_string(i), dataset::featurize(toy_smiles()[i % toy_smiles().size()]));
  }
  return drugs;
}

inline dataset::ContextFeatureSet toy_contexts(std::size_t n = 2, std::size_t k = 3) {
  dataset::ContextFeatureSet contexts;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<double> f(k);
    for (std::size_t j = 0; j < k; ++j) f[j] = 0.1 * static_cast<double>(c + 1) - 0.05 * static_cast<double>(j);
    contexts.insert("C" + std::to_string(c), std::move(f));
  }
  return contexts;
}

/// Every ordered pair (i < j) of `n_drugs` drugs in every context, with a
/// deterministic alternating label.
inline dataset::LabeledTriples toy_triples(std::size_t n_drugs = 8, std::size_t n_contexts = 2) {
  dataset::LabeledTriples y;
  std::size_t k = 0;
  for (std::size_t c = 0; c < n_contexts; ++c) {
    for (std::size_t i = 0; i < n_drugs; ++i) {
      for (std::size_t j = i + 1; j < n_drugs; ++j) {
        y.add("D" + std::to_string(i), "D" + std::to_string(j), "C" + std::to_string(c),
              static_cast<double>(k++ % 2));
      }
    }
  }
  return y;
}

}  // namespace pairscore::testing

#endif  // PAIRSCORE_TESTS_FIXTURES_HPP_
