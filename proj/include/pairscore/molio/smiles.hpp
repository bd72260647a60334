//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PAIRSCORE_MOLIO_SMILES_HPP_
#define PAIRSCORE_MOLIO_SMILES_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace pairscore::molio {

/// The organic subset. Order is the one-hot column order of atom features.
enum class Element : std::uint8_t { B, C, N, O, P, S, F, Cl, Br, I };

inline constexpr std::size_t kElementCount = 10;

std::string_view element_symbol(Element e) noexcept;
std::optional<Element> element_from_symbol(std::string_view symbol) noexcept;

/// Standard valences used to fill implicit hydrogens, ascending.
std::span<const int> standard_valences(Element e) noexcept;

enum class BondOrder : std::uint8_t { Single, Double, Triple, Aromatic };

struct AtomRecord {
  Element element = Element::C;
  int formal_charge = 0;
  bool aromatic = false;
  int h_count = 0;
  /// Heavy-atom neighbors, i.e. incident bond records.
  int degree = 0;

  bool operator==(const AtomRecord &) const = default;
};

struct BondRecord {
  std::size_t i = 0;
  std::size_t j = 0;
  BondOrder order = BondOrder::Single;

  bool operator==(const BondRecord &) const = default;
};

/// Simple undirected hydrogen-suppressed molecular graph.
struct MolecularGraph {
  std::vector<AtomRecord> atoms;
  std::vector<BondRecord> bonds;

  std::size_t atom_count() const noexcept { return atoms.size(); }
  std::size_t bond_count() const noexcept { return bonds.size(); }

  /// Per-atom incident bond indices, in bond-list order.
  std::vector<std::vector<std::size_t>> incidence() const;

  bool operator==(const MolecularGraph &) const = default;
};

/// Parses the supported SMILES subset:
///   - organic-subset atoms B C N O P S F Cl Br I, aromatic b c n o p s;
///   - bracket atoms [isotope? symbol chirality? Hn? charge? class?]; isotope,
///     chirality and atom class are read and discarded;
///   - bonds - = # : and the directional / \ (read as single);
///   - branches, ring closures 0-9 and %nn, and '.' component separators.
///
/// Unbracketed atoms receive implicit hydrogens from their smallest standard
/// valence that accommodates the bond-order sum. Aromatic bonds count 1, and
/// aromatic B/C/N/P atoms count one extra for their share of the pi system.
///
/// Errors: EmptyInput, UnbalancedParenthesis, UnmatchedRingBond,
/// UnknownSymbol, SmilesSyntax (any other malformed input).
MolecularGraph parse_smiles(std::string_view text);

/// Throws SmilesSyntax if the graph breaks a MolecularGraph invariant.
void validate(const MolecularGraph &graph);

/// Relabels atoms so that old atom i becomes new atom perm[i]. Bonds keep
/// their list order with remapped endpoints.
MolecularGraph permute_atoms(const MolecularGraph &graph,
                             std::span<const std::size_t> perm);

}  // namespace pairscore::molio

#endif  // PAIRSCORE_MOLIO_SMILES_HPP_
