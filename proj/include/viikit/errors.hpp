#pragma once

#include <stdexcept>
#include <string>

namespace viikit {

// Root of the library's error hierarchy. Errors that carry structured payloads
// are declared next to the types they reference (see quadratic.hpp, cs.hpp,
// surface.hpp); everything payload-free lives here.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    using Error::Error;
};

struct IndexOutOfRange : Error {
    using Error::Error;
};

struct ArityTooSmall : Error {
    using Error::Error;
};

struct ArityCapExceeded : Error {
    using Error::Error;
};

struct SizeCapExceeded : Error {
    using Error::Error;
};

struct InvalidChain : Error {
    using Error::Error;
};

struct InvalidConfiguration : Error {
    using Error::Error;
};

struct OrderMismatch : Error {
    using Error::Error;
};

struct NonUnit : Error {
    using Error::Error;
};

}  // namespace viikit
