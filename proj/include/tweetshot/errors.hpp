#pragma once

#include <stdexcept>
#include <string>

namespace tweetshot {

enum class ErrorCode {
    IoError,
    EncodingError,
    InvalidArgument,
    EngineNotFound,
    EngineFailed,
    EmptyOutput,
    NoTimestampFound,
    RelativeTimestampOnly,
    NoHandleFound,
    EmptyBody,
    TruncatedHandleRejected,
    MissingField,
    NetworkError,
    HttpError,
    RateLimited,
    SchemaError,
};

const char* error_code_name(ErrorCode code);

/// Single exception type carrying a machine-readable code. HttpError keeps
/// the status code in detail().
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message, int detail = 0)
        : std::runtime_error(std::move(message)), code_(code), detail_(detail) {}

    ErrorCode code() const noexcept { return code_; }
    int detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    int detail_;
};

} // namespace tweetshot
