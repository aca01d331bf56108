#pragma once

#include <stdexcept>
#include <string>

namespace tsf {

// Domain error: input is well formed but violates a mathematical precondition.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Schema error: input does not parse into the expected shape.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace tsf
