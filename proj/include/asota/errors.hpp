#pragma once

#include <stdexcept>
#include <string>

namespace asota {

// Error categories map to CLI exit codes: manifest 2, data 3, numeric 4.
struct ManifestError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace asota
