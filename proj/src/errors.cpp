#include "rwlab/errors.hpp"

namespace rwlab {

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

const char* kind_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::config: return "configuration error";
    case ErrorKind::encoding: return "encoding error";
    case ErrorKind::resource_limit: return "resource limit";
    case ErrorKind::domain: return "domain error";
    case ErrorKind::invariant: return "invariant violation";
    case ErrorKind::range_exhausted: return "range exhausted";
    }
    return "error";
}

int exit_code(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::resource_limit:
    case ErrorKind::range_exhausted: return 2;
    case ErrorKind::invariant: return 3;
    default: return 1;
    }
}

}  // namespace rwlab
