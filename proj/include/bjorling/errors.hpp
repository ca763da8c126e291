#pragma once
#include <stdexcept>
#include <string>

namespace bjorling {

enum class ErrorCode {
  OutOfDomain,
  DomainMismatch,
  ImageEscapesDomain,
  RefitResidualTooLarge,
  NotTimelike,
  ValidationFailed,
  TruncationInsufficient,
  DegenerateNormal,
  NotImmersed,
  ParallelTangents,
  IsotropyCertificateFailed,
  NotInJn,
  DegeneratePlane,
  ReFNotZero,
  NoConvergence,
  DomainEscape,
  NoDescent,
  ParseError,
  IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + msg),
        code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace bjorling
