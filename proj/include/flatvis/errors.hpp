#pragma once

#include <stdexcept>
#include <string>

namespace flatvis {

// Malformed file / schema violation. Message names the offending field.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structurally well-formed but violates a drawing invariant.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A transformation was fed input it cannot accept, or failed internally.
struct XformError : std::runtime_error {
    bool internal = false;
    explicit XformError(const std::string &msg, bool internal_ = false)
        : std::runtime_error(msg), internal(internal_) {}
};

} // namespace flatvis
