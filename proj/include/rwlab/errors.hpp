#pragma once

#include <stdexcept>
#include <string>

namespace rwlab {

enum class ErrorKind { config, encoding, resource_limit, domain, invariant, range_exhausted };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

const char* kind_name(ErrorKind kind);

// 0 ok, 1 usage, 2 resource limit, 3 invariant violation
int exit_code(ErrorKind kind);

}  // namespace rwlab
