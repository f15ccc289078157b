#include "pajama/error.hpp"

namespace pajama {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidScore:       return "InvalidScore";
        case ErrorCode::EmptyInput:         return "EmptyInput";
        case ErrorCode::EmptyText:          return "EmptyText";
        case ErrorCode::ServiceUnavailable: return "ServiceUnavailable";
        case ErrorCode::ProtocolViolation:  return "ProtocolViolation";
        case ErrorCode::AuthMissing:        return "AuthMissing";
        case ErrorCode::ParseError:         return "ParseError";
        case ErrorCode::TooFewJudges:       return "TooFewJudges";
        case ErrorCode::DegenerateMoments:  return "DegenerateMoments";
        case ErrorCode::NumericalFailure:   return "NumericalFailure";
        case ErrorCode::ShapeError:         return "ShapeError";
        case ErrorCode::InvalidArgument:    return "InvalidArgument";
        case ErrorCode::NotFound:           return "NotFound";
    }
    return "UnknownError";
}

} // namespace pajama
