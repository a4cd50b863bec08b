#include "scg/numeric.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>

#include "scg/error.hpp"

namespace scg {

HighPrecision make_high(double x) { return HighPrecision(x, kHighPrecisionBits); }

HighPrecision make_high(const Rational& x) {
  HighPrecision out(0, kHighPrecisionBits);
  out = x;
  return out;
}

const HighPrecision& euler_e() {
  static const HighPrecision value = [] {
    HighPrecision sum(1, kHighPrecisionBits);
    HighPrecision term(1, kHighPrecisionBits);
    // 1/300! is far below 2^-1024.
    for (int k = 1; k <= 300; ++k) {
      term /= k;
      sum += term;
    }
    return sum;
  }();
  return value;
}

double to_double(double x) { return x; }
// get_d truncates toward zero; step one ulp away from zero when that is closer.
double to_double(const Rational& x) {
  const double down = x.get_d();
  if (Rational(down) == x || !std::isfinite(down)) return down;
  const double up = std::nextafter(down, sgn(x) > 0 ? HUGE_VAL : -HUGE_VAL);
  if (!std::isfinite(up)) return down;
  const Rational gap_down = abs(x - Rational(down));
  const Rational gap_up = abs(Rational(up) - x);
  if (gap_up < gap_down) return up;
  if (gap_down < gap_up) return down;
  std::int64_t bits = 0;
  std::memcpy(&bits, &down, sizeof bits);
  return (bits & 1) ? up : down;
}

double to_double(const HighPrecision& x) { return to_double(Rational(x)); }

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Rational parse_decimal(std::string_view s, std::string_view original) {
  auto fail = [&] {
    return InvalidInputError("not a rational number: '" + std::string(original) + "'");
  };
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) throw fail();
    exponent = std::strtol(std::string(exp_part).c_str(), nullptr, 10);
    if (exp_negative) exponent = -exponent;
  }
  std::string digits;
  auto dot = s.find('.');
  std::string_view int_part = s.substr(0, dot);
  std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  if (int_part.empty() && frac_part.empty()) throw fail();
  if (!int_part.empty() && !all_digits(int_part)) throw fail();
  if (!frac_part.empty() && !all_digits(frac_part)) throw fail();
  digits.append(int_part);
  digits.append(frac_part);
  exponent -= static_cast<long>(frac_part.size());

  mpz_class numerator(digits.empty() ? "0" : digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational out;
  if (exponent >= 0) {
    out = Rational(numerator * scale);
  } else {
    out = Rational(numerator, scale);
  }
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw InvalidInputError("empty rational literal");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(trim(s.substr(0, slash)), text);
    Rational den = parse_decimal(trim(s.substr(slash + 1)), text);
    if (den == 0) throw InvalidInputError("zero denominator in '" + std::string(text) + "'");
    return num / den;
  }
  return parse_decimal(s, text);
}

std::string to_string(const Rational& x) { return x.get_str(10); }

std::string to_string(double x) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

}  // namespace scg
