#pragma once

#include <stdexcept>
#include <string>

namespace shiftlab {

// Error taxonomy shared with the C API status codes in shiftlab.h.
enum class ErrorCode {
    InvalidArgument = 1,
    Parse = 2,
    Range = 3,
    UnknownName = 4,
    Validation = 5,
    Io = 6,
    Internal = 7,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message) : std::runtime_error(message), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

} // namespace shiftlab
