#pragma once

#include <stdexcept>
#include <string>

namespace hlf {

// Base class for all engine errors. Subclasses correspond to the
// failure modes surfaced through the CLI exit codes.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A guarded summation saw a term below the declared X-exponent floor.
class FloorViolation : public Error {
public:
    explicit FloorViolation(const std::string& what) : Error(what) {}
};

// A truncated-series result has an empty guaranteed window.
class PrecisionExhausted : public Error {
public:
    explicit PrecisionExhausted(const std::string& what) : Error(what) {}
};

class DivisionByZero : public Error {
public:
    explicit DivisionByZero(const std::string& what) : Error(what) {}
};

// Residue map applied to an element with negative t2-valuation.
class NotIntegral : public Error {
public:
    explicit NotIntegral(const std::string& what) : Error(what) {}
};

// A matrix could not be certified invertible at the current precision.
class SingularAtPrecision : public Error {
public:
    explicit SingularAtPrecision(const std::string& what) : Error(what) {}
};

class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

// Operands carry residue data at incompatible congruence levels.
class LevelMismatch : public Error {
public:
    explicit LevelMismatch(const std::string& what) : Error(what) {}
};

class NotNormalized : public Error {
public:
    explicit NotNormalized(const std::string& what) : Error(what) {}
};

// A symbolic set image was requested for a matrix class the engine
// does not transport exactly (only measures are exact there).
class UnsupportedImageClass : public Error {
public:
    explicit UnsupportedImageClass(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t pos)
        : Error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

class UnknownSuite : public Error {
public:
    explicit UnknownSuite(const std::string& what) : Error(what) {}
};

class UnsupportedByOracle : public Error {
public:
    explicit UnsupportedByOracle(const std::string& what) : Error(what) {}
};

} // namespace hlf
