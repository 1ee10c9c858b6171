#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace su {

// Stable error codes shared by the library, the CLI, and the HTTP service.
enum class ErrorCode {
  ParseError,
  EmptyContent,
  UnknownUnitClass,
  UnknownUnit,
  DanglingMember,
  EmptyMembers,
  CyclicComposition,
  UnboundHole,
  ShapeMismatch,
  MixedQuantifiers,
  UnclassedInstance,
  SatisfactionFails,
  NotComposable,
  NotUniversal,
  UnknownVariable,
  OverlappingSets,
  CyclicGraph,
  DomainTooLarge,
  ZeroProbabilityEvidence,
  InvalidAdjustmentSet,
  InvalidMediatorSet,
  NotAChain,
  NonNumericOutcome,
  NotDeterministicForm,
  InvalidScm,
  MalformedHead,
  InvalidRequest,
  NotFound,
  StoreLoadError,
  AddressInUse,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by parse_nquads; carries the 1-based offending line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : Error(ErrorCode::ParseError,
              "line " + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(reason) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

}  // namespace su
