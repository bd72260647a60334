//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "pairscore/runtime.hpp"

#include <climits>  // defines __GLIBC__ on glibc systems

#if defined(__GLIBC__)
#include <malloc.h>
#endif

namespace pairscore {

void tune_allocator() noexcept {
#if defined(__GLIBC__)
  // glibc caps M_MMAP_THRESHOLD at 32 MiB, so large blocks would still be
  // mmapped; turning mmap off routes every block through the reusable heap.
  mallopt(M_MMAP_MAX, 0);
  mallopt(M_TRIM_THRESHOLD, INT_MAX);
#endif
}

}  // namespace pairscore
