//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PAIRSCORE_MOLIO_FINGERPRINT_HPP_
#define PAIRSCORE_MOLIO_FINGERPRINT_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pairscore/molio/smiles.hpp"

namespace pairscore::molio {

inline constexpr std::size_t kFingerprintBits = 256;
inline constexpr int kFingerprintRadius = 2;

/// Fixed-length binary vector.
class Fingerprint {
 public:
  Fingerprint() = default;
  explicit Fingerprint(std::size_t n_bits): bits_(n_bits, 0) { }

  std::size_t size() const noexcept { return bits_.size(); }
  bool test(std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i) { bits_[i] = 1; }
  std::size_t popcount() const noexcept;
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  bool operator==(const Fingerprint &) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept;

/// Radius-0 atom identifier: FNV-1a over five little-endian int32 values
/// (element index, degree, formal charge, hydrogen count, aromatic 0/1).
std::uint64_t atom_invariant(const AtomRecord &atom) noexcept;

/// ECFP-style environment identifiers that survive deduplication, sorted
/// and unique.
///
/// At radius r >= 1 an atom's identifier is FNV-1a over: int32 r, uint64 own
/// previous identifier, uint32 neighbor count, then the neighbors' (int32
/// bond-order code, uint64 previous identifier) pairs in ascending order.
/// Every identifier covers the set of atoms within r bonds of its center.
/// An identifier survives only if no smaller radius already produced its
/// covered set; identifiers of equal radius covering the same set all
/// survive, which keeps the result independent of atom order.
std::vector<std::uint64_t> morgan_identifiers(const MolecularGraph &graph,
                                              int radius = kFingerprintRadius);

/// Folds the surviving identifiers into `n_bits` binary bits (id mod n_bits).
Fingerprint morgan_fingerprint(const MolecularGraph &graph,
                               int radius = kFingerprintRadius,
                               std::size_t n_bits = kFingerprintBits);

}  // namespace pairscore::molio

#endif  // PAIRSCORE_MOLIO_FINGERPRINT_HPP_
