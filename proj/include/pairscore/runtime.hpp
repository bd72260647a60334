//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PAIRSCORE_RUNTIME_HPP_
#define PAIRSCORE_RUNTIME_HPP_

namespace pairscore {

/// Keeps freed tensor memory in the process instead of returning it to the
/// kernel after every batch. Training allocates and frees the same large
/// buffers each step; without this, glibc unmaps them and every step pays
/// fresh page faults. Call once from main(); a no-op off glibc.
void tune_allocator() noexcept;

}  // namespace pairscore

#endif  // PAIRSCORE_RUNTIME_HPP_
