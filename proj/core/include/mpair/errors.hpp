#pragma once

#include <stdexcept>
#include <string>

namespace mpair {

// Raised when a structural guarantee the library itself is responsible for
// turns out broken (a contract an elimination step must preserve, a graph
// component that is not a path, ...). Callers should not catch this to
// continue; it surfaces a defect, not bad input.
struct IntegrityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace mpair
