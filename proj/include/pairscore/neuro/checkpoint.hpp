//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PAIRSCORE_NEURO_CHECKPOINT_HPP_
#define PAIRSCORE_NEURO_CHECKPOINT_HPP_

#include <filesystem>
#include <string>

#include "pairscore/neuro/parameters.hpp"

namespace pairscore::neuro {

inline constexpr std::uint32_t kCheckpointVersion = 1;

/// Contents of a checkpoint file.
///
/// Layout, all integers little-endian:
///   "PSCK" | u32 version | str model | str hyperparameters (JSON) |
///   u32 n | n x (str name | u8 group | u32 rank | rank x u64 dim | f64 data)
/// where str is a u32 byte length followed by the bytes.
struct Checkpoint {
  std::string model;
  std::string hyperparameters;
  ParameterStore params;
};

std::string encode_checkpoint(const Checkpoint &ckpt);
/// Throws CheckpointFormat on any truncation or inconsistency.
Checkpoint decode_checkpoint(std::string_view bytes);

/// Throws IoError.
void save_checkpoint(const std::filesystem::path &path, const Checkpoint &ckpt);
/// Throws FileNotFound or CheckpointFormat.
Checkpoint load_checkpoint(const std::filesystem::path &path);

}  // namespace pairscore::neuro

#endif  // PAIRSCORE_NEURO_CHECKPOINT_HPP_
