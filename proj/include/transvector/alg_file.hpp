#pragma once

#include "transvector/lie_algebra.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace transvector {

/// Syntax error in an algebra definition, with 1-based line and column.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// The definition parsed but validate_algebra rejected it.
class AlgebraValidationError : public std::runtime_error {
 public:
  AlgebraValidationError(const std::string& message, ValidationReport report)
      : std::runtime_error(message), report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Parses "a", "p/q", "bi", "a+bi", "a-bi", "i", "-i" with rational a, b.
ComplexRational parse_complex_rational(std::string_view text);

/// Algebra definition text:
///
///   [basis]        labels separated by whitespace
///   [bracket]      "X Y -> c_1 ... c_d" per nonzero bracket; X, Y are labels
///                  or 1-based indices
///   [theta]        d rows of d rationals
///   [realization]  optional: "size n", "involution inverse-adjoint", then
///                  "label: row ; row ; ..." with complex rational entries
///
/// '#' starts a comment. The result is validated; failures throw
/// AlgebraValidationError carrying the report.
StructuredLieAlgebra parse_algebra_text(std::string_view text, const std::string& source = "<text>");
StructuredLieAlgebra parse_algebra_file(const std::filesystem::path& path);

/// Inverse of parse_algebra_text.
std::string format_algebra(const StructuredLieAlgebra& a);

}  // namespace transvector
