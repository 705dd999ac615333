#include "spadsp/error.hpp"

namespace spadsp {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::kParameter: return "parameter";
    case ErrorCode::kNumericalFailure: return "numerical-failure";
    case ErrorCode::kFileNotFound: return "file-not-found";
    case ErrorCode::kMalformedRecord: return "malformed-record";
    case ErrorCode::kLengthMismatch: return "length-mismatch";
    case ErrorCode::kEmptyInput: return "empty-input";
    case ErrorCode::kIo: return "io";
    }
    return "unknown";
}

} // namespace spadsp
