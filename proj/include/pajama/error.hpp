// Typed errors shared by every pajama module. Each CLI exit code maps onto
// one of these, so the set is closed and stable.

#pragma once

#include <stdexcept>
#include <string>

namespace pajama {

enum class ErrorCode {
    InvalidScore,
    EmptyInput,
    EmptyText,
    ServiceUnavailable,
    ProtocolViolation,
    AuthMissing,
    ParseError,
    TooFewJudges,
    DegenerateMoments,
    NumericalFailure,
    ShapeError,
    InvalidArgument,
    NotFound,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

// Throws Error(code, message) when cond is false.
inline void require(bool cond, ErrorCode code, const std::string& message) {
    if (!cond) throw Error(code, message);
}

} // namespace pajama
