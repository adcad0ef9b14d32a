#pragma once

#include <stdexcept>
#include <string>

namespace kzero {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroInversion : Error {
    ZeroInversion() : Error("inversion of zero") {}
};

struct NoSolution : Error {
    NoSolution() : Error("Artin-Schreier equation has no solution (nonzero trace)") {}
};

struct NonResidue : Error {
    NonResidue() : Error("square root of a quadratic non-residue") {}
};

struct NotHalvable : Error {
    NotHalvable() : Error("point is not 2-divisible (trace of x is 1)") {}
};

struct NotThirdable : Error {
    NotThirdable() : Error("point is not 3-divisible (nonzero trace condition)") {}
};

struct DegeneratePoint : Error {
    explicit DegeneratePoint(const std::string &what) : Error("degenerate point: " + what) {}
};

struct ZeroArgument : Error {
    ZeroArgument() : Error("curve parameter a must be nonzero") {}
};

struct UnsupportedDegree : Error {
    explicit UnsupportedDegree(const std::string &what) : Error("unsupported degree: " + what) {}
};

struct DegreeTooLarge : Error {
    explicit DegreeTooLarge(const std::string &what) : Error("degree too large: " + what) {}
};

struct Exhausted : Error {
    explicit Exhausted(const std::string &what) : Error("search exhausted: " + what) {}
};

struct IOError : Error {
    explicit IOError(const std::string &what) : Error("I/O error: " + what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string &what) : Error("parse error: " + what) {}
};

} // namespace kzero
