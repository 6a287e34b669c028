#pragma once

#include <stdexcept>
#include <string>

namespace epigame {

/// Stable error identifiers.  The CLI prints them verbatim and maps every
/// thrown Error to exit code 2, so the set below is part of the interface.
enum class ErrorCode {
  NullConditioningEvent,
  MixedSpaces,
  StrategySpaceTooLarge,
  WrongUtilityKind,
  WrongPlayerCount,
  NoCommonPrior,
  DimensionMismatch,
  EnumerationCapExceeded,
  ScenarioSpaceTooLarge,
  NotImperfectInformation,
  ParseError,
  ValidationError,
  UnknownExample,
};

const char* error_code_name(ErrorCode code);

/// Library exception.  `code()` is stable; the message is for humans and
/// names the offending field or cap where that helps.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }
  const char* code_name() const { return error_code_name(code_); }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace epigame
