#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sclat {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidModel : public Error {
public:
    using Error::Error;
};

class ModelMismatch : public Error {
public:
    using Error::Error;
};

class BadParameter : public Error {
public:
    using Error::Error;
};

class PreconditionFailed : public Error {
public:
    using Error::Error;
};

// ---- expression language ---------------------------------------------------

class ParseError : public Error {
public:
    ParseError(std::size_t offset, std::string message, std::vector<std::string> expected,
               std::string source_line);

    std::size_t offset() const noexcept { return offset_; }
    const std::string& detail() const noexcept { return detail_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }
    const std::string& source_line() const noexcept { return line_; }

private:
    std::size_t offset_;
    std::string detail_;
    std::vector<std::string> expected_;
    std::string line_;
};

class ArityError : public Error {
public:
    using Error::Error;
};

class UnknownIdentifier : public Error {
public:
    using Error::Error;
};

class UnboundIdentifier : public Error {
public:
    using Error::Error;
};

class NonIntegerExponent : public Error {
public:
    using Error::Error;
};

/// Raised when a division node meets a denominator with modulus below 1e-14.
class DivisionNearZero : public Error {
public:
    DivisionNearZero(std::string point, std::size_t offset);
    const std::string& point() const noexcept { return point_; }
    std::size_t offset() const noexcept { return offset_; }

private:
    std::string point_;
    std::size_t offset_;
};

// ---- symbols ---------------------------------------------------------------

class UnknownBuiltin : public Error {
public:
    using Error::Error;
};

class MissingClassDeclaration : public Error {
public:
    using Error::Error;
};

class NonDecreasingOrders : public Error {
public:
    using Error::Error;
};

class DivisorSingularity : public Error {
public:
    DivisorSingularity(std::string message, std::vector<std::size_t> points);
    const std::vector<std::size_t>& points() const noexcept { return points_; }

private:
    std::vector<std::size_t> points_;
};

class MemoryBudgetExceeded : public Error {
public:
    using Error::Error;
};

// ---- calculus, analysis, solvers -------------------------------------------

class NotElliptic : public Error {
public:
    using Error::Error;
};

class SymbolVanishesOnGrid : public Error {
public:
    SymbolVanishesOnGrid(std::string message, std::size_t k_point, std::size_t theta_point);
    std::size_t k_point() const noexcept { return k_; }
    std::size_t theta_point() const noexcept { return t_; }

private:
    std::size_t k_;
    std::size_t t_;
};

class SingularMatrix : public Error {
public:
    using Error::Error;
};

class SingularStepMatrix : public Error {
public:
    using Error::Error;
};

class FormUnboundedBelow : public Error {
public:
    using Error::Error;
};

class NotPointwiseNonnegative : public Error {
public:
    using Error::Error;
};

class EnergyCertificateFailed : public Error {
public:
    EnergyCertificateFailed(std::string message, std::size_t step);
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

} // namespace sclat
