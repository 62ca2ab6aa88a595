#pragma once

#include <stdexcept>
#include <string>

namespace entlab {

// Failure categories map onto CLI exit codes 2, 3 and 4.
enum class ErrorKind { Validation, Numeric, ResourceCap };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string module, const std::string& msg)
        : std::runtime_error(module + ": " + msg), kind_(kind), module_(std::move(module)) {}

    ErrorKind kind() const { return kind_; }
    const std::string& module() const { return module_; }

private:
    ErrorKind kind_;
    std::string module_;
};

[[noreturn]] inline void fail_validation(const std::string& module, const std::string& msg) {
    throw Error(ErrorKind::Validation, module, msg);
}
[[noreturn]] inline void fail_numeric(const std::string& module, const std::string& msg) {
    throw Error(ErrorKind::Numeric, module, msg);
}
[[noreturn]] inline void fail_cap(const std::string& module, const std::string& msg) {
    throw Error(ErrorKind::ResourceCap, module, msg);
}

inline int exit_code(ErrorKind k) {
    switch (k) {
    case ErrorKind::Validation: return 2;
    case ErrorKind::Numeric: return 3;
    case ErrorKind::ResourceCap: return 4;
    }
    return 1;
}

} // namespace entlab
