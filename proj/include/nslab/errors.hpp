#pragma once

#include <stdexcept>
#include <string>

namespace nslab {

// Exit-code mapping used by the CLI: usage -> 2, data format -> 3,
// numerical failure (NaN / CFL) -> 4.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DataFormatError : std::runtime_error {
    explicit DataFormatError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace nslab
