#include "sclat/errors.hpp"

namespace sclat {

namespace {

std::string parse_message(std::size_t offset, const std::string& message, const std::vector<std::string>& expected) {
    std::string s = "parse error at offset " + std::to_string(offset) + ": " + message;
    if (!expected.empty()) {
        s += " (expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) s += (i ? ", " : "") + expected[i];
        s += ")";
    }
    return s;
}

} // namespace

ParseError::ParseError(std::size_t offset, std::string message, std::vector<std::string> expected,
                       std::string source_line)
    : Error(parse_message(offset, message, expected)),
      offset_(offset),
      detail_(std::move(message)),
      expected_(std::move(expected)),
      line_(std::move(source_line)) {}

DivisionNearZero::DivisionNearZero(std::string point, std::size_t offset)
    : Error("division by a value below 1e-14 at offset " + std::to_string(offset) + ", point " + point),
      point_(std::move(point)),
      offset_(offset) {}

DivisorSingularity::DivisorSingularity(std::string message, std::vector<std::size_t> points)
    : Error(std::move(message)), points_(std::move(points)) {}

SymbolVanishesOnGrid::SymbolVanishesOnGrid(std::string message, std::size_t k_point, std::size_t theta_point)
    : Error(message + " (box point " + std::to_string(k_point) + ", grid point " + std::to_string(theta_point) + ")"),
      k_(k_point),
      t_(theta_point) {}

EnergyCertificateFailed::EnergyCertificateFailed(std::string message, std::size_t step)
    : Error(message + " (step " + std::to_string(step) + ")"), step_(step) {}

} // namespace sclat
