#pragma once

#include <stdexcept>
#include <string>

namespace wedge {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : Error {
    std::size_t position;
    ParseError(const std::string& what, std::size_t pos)
        : Error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

struct ChartMismatch : Error {
    using Error::Error;
};

struct DegreeError : Error {
    using Error::Error;
};

struct EvalError : Error {
    using Error::Error;
};

}  // namespace wedge
