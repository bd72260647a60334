//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "pairscore/error.hpp"

namespace pairscore {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
  case ErrorCode::EmptyInput: return "EmptyInput";
  case ErrorCode::UnbalancedParenthesis: return "UnbalancedParenthesis";
  case ErrorCode::UnmatchedRingBond: return "UnmatchedRingBond";
  case ErrorCode::UnknownSymbol: return "UnknownSymbol";
  case ErrorCode::SmilesSyntax: return "SmilesSyntax";
  case ErrorCode::FileNotFound: return "FileNotFound";
  case ErrorCode::MalformedHeader: return "MalformedHeader";
  case ErrorCode::EmptyDataset: return "EmptyDataset";
  case ErrorCode::DuplicateKey: return "DuplicateKey";
  case ErrorCode::RaggedRows: return "RaggedRows";
  case ErrorCode::LabelOutOfRange: return "LabelOutOfRange";
  case ErrorCode::DuplicateTriple: return "DuplicateTriple";
  case ErrorCode::DegenerateSplit: return "DegenerateSplit";
  case ErrorCode::InsufficientSpace: return "InsufficientSpace";
  case ErrorCode::UnresolvableIdentifier: return "UnresolvableIdentifier";
  case ErrorCode::ShapeMismatch: return "ShapeMismatch";
  case ErrorCode::DisconnectedParameter: return "DisconnectedParameter";
  case ErrorCode::CheckpointFormat: return "CheckpointFormat";
  case ErrorCode::UnknownModel: return "UnknownModel";
  case ErrorCode::WidthMismatch: return "WidthMismatch";
  case ErrorCode::MissingBatchField: return "MissingBatchField";
  case ErrorCode::NonFiniteLoss: return "NonFiniteLoss";
  case ErrorCode::SingleClass: return "SingleClass";
  case ErrorCode::NoPositives: return "NoPositives";
  case ErrorCode::MissingCalibration: return "MissingCalibration";
  case ErrorCode::InvalidArgument: return "InvalidArgument";
  case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string &detail)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail),
      code_(code), detail_(detail) { }

}  // namespace pairscore
