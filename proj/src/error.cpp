#include "bzt/error.hpp"

namespace bzt {

const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorCode::DegenerateBox: return "DegenerateBox";
    case ErrorCode::ModeCapTooSmall: return "ModeCapTooSmall";
    case ErrorCode::SingularEigenbasis: return "SingularEigenbasis";
    case ErrorCode::ScenarioMismatch: return "ScenarioMismatch";
    case ErrorCode::SingularBlock: return "SingularBlock";
    case ErrorCode::IndeterminateType: return "IndeterminateType";
    case ErrorCode::SingularSolve: return "SingularSolve";
    case ErrorCode::BlowUp: return "BlowUp";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::NotSupported: return "NotSupported";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::SingularEigenbasis:
    case ErrorCode::SingularBlock:
    case ErrorCode::IndeterminateType:
    case ErrorCode::SingularSolve:
    case ErrorCode::BlowUp:
      return 2;
    default:
      return 1;
  }
}

}  // namespace bzt
