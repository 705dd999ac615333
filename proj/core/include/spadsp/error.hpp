#pragma once

#include <stdexcept>
#include <string>

namespace spadsp {

enum class ErrorCode {
    kParameter,
    kNumericalFailure,
    kFileNotFound,
    kMalformedRecord,
    kLengthMismatch,
    kEmptyInput,
    kIo,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class ParameterError : public Error {
public:
    explicit ParameterError(const std::string& what)
        : Error(ErrorCode::kParameter, what) {}
};

// Raised when the covariance recursion or gain produces nonfinite values.
class NumericalFailure : public Error {
public:
    explicit NumericalFailure(const std::string& what)
        : Error(ErrorCode::kNumericalFailure, what) {}
};

class IoError : public Error {
public:
    IoError(ErrorCode code, const std::string& what) : Error(code, what) {}
};

} // namespace spadsp
