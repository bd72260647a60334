//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "pairscore/molio/features.hpp"

#include <algorithm>

namespace pairscore::molio {

Tensor atom_features(const MolecularGraph &graph) {
  Tensor x({graph.atom_count(), kAtomFeatureWidth});
  for (std::size_t i = 0; i < graph.atom_count(); ++i) {
    const AtomRecord &atom = graph.atoms[i];
    x(i, static_cast<std::size_t>(atom.element)) = 1.0;
    const auto degree = static_cast<std::size_t>(std::clamp(atom.degree, 0, 5));
    x(i, kDegreeColumn + degree) = 1.0;
    x(i, kChargeColumn) = atom.formal_charge;
    x(i, kAromaticColumn) = atom.aromatic ? 1.0 : 0.0;
    const auto hydrogens = static_cast<std::size_t>(std::clamp(atom.h_count, 0, 3));
    x(i, kHydrogenColumn + hydrogens) = 1.0;
  }
  return x;
}

Tensor bond_features(const MolecularGraph &graph) {
  Tensor x({graph.bond_count(), kBondFeatureWidth});
  for (std::size_t b = 0; b < graph.bond_count(); ++b) {
    x(b, static_cast<std::size_t>(graph.bonds[b].order)) = 1.0;
  }
  return x;
}

}  // namespace pairscore::molio
