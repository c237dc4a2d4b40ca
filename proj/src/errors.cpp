#include "tweetshot/errors.hpp"

namespace tweetshot {

const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::IoError: return "io_error";
    case ErrorCode::EncodingError: return "encoding_error";
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::EngineNotFound: return "engine_not_found";
    case ErrorCode::EngineFailed: return "engine_failed";
    case ErrorCode::EmptyOutput: return "empty_output";
    case ErrorCode::NoTimestampFound: return "no_timestamp_found";
    case ErrorCode::RelativeTimestampOnly: return "relative_timestamp_only";
    case ErrorCode::NoHandleFound: return "no_handle_found";
    case ErrorCode::EmptyBody: return "empty_body";
    case ErrorCode::TruncatedHandleRejected: return "truncated_handle_rejected";
    case ErrorCode::MissingField: return "missing_field";
    case ErrorCode::NetworkError: return "network_error";
    case ErrorCode::HttpError: return "http_error";
    case ErrorCode::RateLimited: return "rate_limited";
    case ErrorCode::SchemaError: return "schema_error";
    }
    return "unknown";
}

} // namespace tweetshot
