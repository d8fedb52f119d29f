#pragma once

#include <stdexcept>
#include <string>

namespace pyro {

enum class ErrorCode {
    Input,        // bad arguments, out-of-range coordinates, malformed instances
    Parse,        // unreadable grid or program text
    Unsupported,  // operation not defined for this lattice/variant
    Infeasible,   // well-formed instance with no solution
    Io,           // file access failures
    Internal,     // broken invariant, i.e. a bug
};

class PyroError : public std::runtime_error {
public:
    PyroError(ErrorCode code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw PyroError(code, message);
}

inline const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::Input: return "input";
        case ErrorCode::Parse: return "parse";
        case ErrorCode::Unsupported: return "unsupported";
        case ErrorCode::Infeasible: return "infeasible";
        case ErrorCode::Io: return "io";
        case ErrorCode::Internal: return "internal";
    }
    return "unknown";
}

}  // namespace pyro
