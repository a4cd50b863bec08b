#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace scg {

/// Exact rational scalar. Every finite double converts to it without loss.
using Rational = mpq_class;

/// Extended-precision float used where double precision cancels badly.
using HighPrecision = mpf_class;

inline constexpr unsigned kHighPrecisionBits = 1024;

HighPrecision make_high(double x);
HighPrecision make_high(const Rational& x);

/// Euler's number to kHighPrecisionBits.
const HighPrecision& euler_e();

double to_double(double x);
double to_double(const Rational& x);
double to_double(const HighPrecision& x);

/// Accepts "p/q", integers and decimal notation ("0.125", "-1.5e-3").
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" for integers).
std::string to_string(const Rational& x);

/// Shortest round-trip decimal representation.
std::string to_string(double x);

/// Conversion hooks used by the templated algorithms.
template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static double from_double(double x) { return x; }
  static double from_rational(const Rational& x) { return to_double(x); }
  static bool is_exact() { return false; }
};

template <>
struct ScalarTraits<Rational> {
  static Rational from_double(double x) { return Rational(x); }
  static Rational from_rational(const Rational& x) { return x; }
  static bool is_exact() { return true; }
};

}  // namespace scg
