#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

namespace transvector {

using Rational = mpq_class;

/// Scalar mode of a computation. Exact mode is used for every algebraic
/// predicate, float mode only in the geometry layer and series evaluation.
enum class ScalarMode { exact, float64 };

template <class T>
constexpr ScalarMode scalar_mode_of();

template <>
constexpr ScalarMode scalar_mode_of<Rational>() { return ScalarMode::exact; }

template <>
constexpr ScalarMode scalar_mode_of<double>() { return ScalarMode::float64; }

inline const char* to_string(ScalarMode m) { return m == ScalarMode::exact ? "exact" : "float"; }

/// Parses "p", "-p", "p/q". Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

inline Rational abs_value(const Rational& q) { return abs(q); }
inline double abs_value(double x) { return x < 0 ? -x : x; }

template <class T>
bool is_zero(const T& x) {
  if constexpr (std::is_same_v<T, Rational>) {
    return sgn(x) == 0;
  } else {
    return x == 0.0;
  }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
bool exact_sqrt(const Rational& q, Rational& root);

Rational factorial(unsigned n);

}  // namespace transvector
