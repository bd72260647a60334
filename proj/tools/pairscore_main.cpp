//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <iostream>

#include "pairscore/cli/commands.hpp"
#include "pairscore/runtime.hpp"

int main(int argc, char **argv) {
  pairscore::tune_allocator();
  return pairscore::cli::run({ argv + 1, argv + argc }, std::cout, std::cerr);
}
