#pragma once

#include <stdexcept>
#include <string>

namespace lexsub {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or missing input data (corpus, fixture, gold file, index).
struct DataError : Error {
    using Error::Error;
};

/// A model backend query failed or was called with invalid arguments.
struct BackendError : Error {
    using Error::Error;
};

/// Caller violated an API precondition.
struct UsageError : Error {
    using Error::Error;
};

}  // namespace lexsub
