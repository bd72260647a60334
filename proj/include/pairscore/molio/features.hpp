//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PAIRSCORE_MOLIO_FEATURES_HPP_
#define PAIRSCORE_MOLIO_FEATURES_HPP_

#include <cstddef>

#include "pairscore/molio/smiles.hpp"
#include "pairscore/tensor.hpp"

namespace pairscore::molio {

// Atom feature columns, in order:
//   [0, 11)   element one-hot over B C N O P S F Cl Br I, then "other"
//   [11, 17)  degree one-hot 0..5 (larger degrees land in 5)
//   17        formal charge
//   18        aromatic flag
//   [19, 23)  hydrogen count one-hot 0..3 (larger counts land in 3)
inline constexpr std::size_t kElementColumns = kElementCount + 1;
inline constexpr std::size_t kDegreeColumn = kElementColumns;
inline constexpr std::size_t kDegreeColumns = 6;
inline constexpr std::size_t kChargeColumn = kDegreeColumn + kDegreeColumns;
inline constexpr std::size_t kAromaticColumn = kChargeColumn + 1;
inline constexpr std::size_t kHydrogenColumn = kAromaticColumn + 1;
inline constexpr std::size_t kHydrogenColumns = 4;
inline constexpr std::size_t kAtomFeatureWidth = kHydrogenColumn + kHydrogenColumns;

/// Bond feature columns: single, double, triple, aromatic.
inline constexpr std::size_t kBondFeatureWidth = 4;

/// |atoms| x kAtomFeatureWidth matrix.
Tensor atom_features(const MolecularGraph &graph);

/// |bonds| x kBondFeatureWidth one-hot matrix in bond-list order.
Tensor bond_features(const MolecularGraph &graph);

}  // namespace pairscore::molio

#endif  // PAIRSCORE_MOLIO_FEATURES_HPP_
