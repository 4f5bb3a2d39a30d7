#pragma once

#include <stdexcept>
#include <string>

namespace bzt {

enum class ErrorCode {
  NonPositiveParameter,
  DegenerateBox,
  ModeCapTooSmall,
  SingularEigenbasis,
  ScenarioMismatch,
  SingularBlock,
  IndeterminateType,
  SingularSolve,
  BlowUp,
  GridTooCoarse,
  NotSupported,
  InvalidArgument,
  ConfigError,
  IoError,
};

const char* error_name(ErrorCode c);

// 1 for usage/config problems, 2 for numerical failures.
int exit_code_for(ErrorCode c);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, std::string module, const std::string& what)
      : std::runtime_error(what), code_(code), module_(std::move(module)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& module() const noexcept { return module_; }

private:
  ErrorCode code_;
  std::string module_;
};

}  // namespace bzt
