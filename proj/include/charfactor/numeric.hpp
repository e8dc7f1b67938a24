#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "charfactor/error.hpp"

namespace charfactor {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integral(const Rational& q) { return denominator_of(q) == 1; }

inline bool fits_int64(const BigInt& v) {
  return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

inline BigInt big_abs(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

inline BigInt big_gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(big_abs(a), big_abs(b));
}

inline BigInt big_lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return big_abs(a) / big_gcd(a, b) * big_abs(b);
}

inline BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

inline BigInt big_pow(const BigInt& base, unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

inline std::string to_string(const BigInt& v) { return v.str(); }

inline std::string to_string(const Rational& q) {
  if (is_integral(q)) return numerator_of(q).str();
  return numerator_of(q).str() + "/" + denominator_of(q).str();
}

/// Accepts "17", "-3", "4/6" (reduced on construction).
inline Rational parse_rational(const std::string& text) {
  auto valid_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto strip_plus = [](std::string s) {
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    return s;
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!valid_int(text)) fail(ErrorCode::ParseError, "not a rational number: '" + text + "'");
    return Rational(BigInt(strip_plus(text)));
  }
  const std::string num = text.substr(0, slash);
  const std::string den = text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) fail(ErrorCode::ParseError, "not a rational number: '" + text + "'");
  BigInt d(strip_plus(den));
  if (d == 0) fail(ErrorCode::ParseError, "zero denominator in '" + text + "'");
  return Rational(BigInt(strip_plus(num)), d);
}

/// Scales a rational row to coprime integers, preserving sign.
inline std::vector<BigInt> primitive_integer_row(std::span<const Rational> row) {
  BigInt lcm = 1;
  for (const auto& q : row)
    if (q != 0) lcm = big_lcm(lcm, denominator_of(q));
  std::vector<BigInt> out;
  out.reserve(row.size());
  BigInt g = 0;
  for (const auto& q : row) {
    BigInt v = numerator_of(q) * (lcm / denominator_of(q));
    g = big_gcd(g, v);
    out.push_back(std::move(v));
  }
  if (g > 1)
    for (auto& v : out) v /= g;
  return out;
}

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace charfactor
