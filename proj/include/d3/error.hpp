#pragma once

#include <stdexcept>
#include <string>

namespace d3 {

enum class ErrorKind {
  InvalidInput,
  ParseError,
  BadPermutation,
  CapExceeded,
  NotSubgroup,
  DimensionMismatch,
  NotAlgebraMap,
  NotBimodule,
  NotBimoduleMap,
  TowerNotDegenerate,
  ConditionFails,
  VerificationFailed,
  OracleInapplicable,
  IdentificationFailure,
  NotRD3,
  NotLeftD2,
  NotRightD2,
};

const char *to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace d3
