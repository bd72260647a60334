//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PAIRSCORE_ERROR_HPP_
#define PAIRSCORE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pairscore {

enum class ErrorCode {
  // molio
  EmptyInput,
  UnbalancedParenthesis,
  UnmatchedRingBond,
  UnknownSymbol,
  SmilesSyntax,
  // dataset
  FileNotFound,
  MalformedHeader,
  EmptyDataset,
  DuplicateKey,
  RaggedRows,
  LabelOutOfRange,
  DuplicateTriple,
  DegenerateSplit,
  InsufficientSpace,
  // batch
  UnresolvableIdentifier,
  // neuro
  ShapeMismatch,
  DisconnectedParameter,
  CheckpointFormat,
  // models
  UnknownModel,
  WidthMismatch,
  MissingBatchField,
  // pipeline
  NonFiniteLoss,
  SingleClass,
  NoPositives,
  MissingCalibration,
  // shared
  InvalidArgument,
  IoError,
};

/// The stable, machine-readable name of an error code ("UnmatchedRingBond").
std::string_view error_name(ErrorCode code) noexcept;

/// Every failure raised by the library. `what()` reads "<Name>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &detail);

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }
  const std::string &detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace pairscore

#endif  // PAIRSCORE_ERROR_HPP_
