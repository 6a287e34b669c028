#include "epigame/errors.hpp"

namespace epigame {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NullConditioningEvent: return "NullConditioningEvent";
    case ErrorCode::MixedSpaces: return "MixedSpaces";
    case ErrorCode::StrategySpaceTooLarge: return "StrategySpaceTooLarge";
    case ErrorCode::WrongUtilityKind: return "WrongUtilityKind";
    case ErrorCode::WrongPlayerCount: return "WrongPlayerCount";
    case ErrorCode::NoCommonPrior: return "NoCommonPrior";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EnumerationCapExceeded: return "EnumerationCapExceeded";
    case ErrorCode::ScenarioSpaceTooLarge: return "ScenarioSpaceTooLarge";
    case ErrorCode::NotImperfectInformation: return "NotImperfectInformation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::UnknownExample: return "UnknownExample";
  }
  return "UnknownError";
}

}  // namespace epigame
