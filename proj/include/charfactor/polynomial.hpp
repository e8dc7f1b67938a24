#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "charfactor/numeric.hpp"

namespace charfactor {

/// Univariate polynomial in t with arbitrary-precision integer coefficients.
/// coeffs()[i] is the coefficient of t^i; the zero polynomial has no coefficients.
class UniPoly {
 public:
  UniPoly() = default;

  explicit UniPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  UniPoly(std::initializer_list<long long> coeffs) {
    for (long long c : coeffs) coeffs_.emplace_back(c);
    trim();
  }

  static UniPoly constant(const BigInt& c) { return UniPoly(std::vector<BigInt>{c}); }
  static UniPoly t() { return UniPoly({0, 1}); }
  static UniPoly monomial(unsigned degree, const BigInt& c = 1) {
    std::vector<BigInt> v(degree + 1, BigInt(0));
    v[degree] = c;
    return UniPoly(std::move(v));
  }

  /// t - root
  static UniPoly linear(const BigInt& root) { return UniPoly(std::vector<BigInt>{-root, BigInt(1)}); }

  static UniPoly from_roots(std::span<const BigInt> roots) {
    UniPoly p = constant(1);
    for (const auto& r : roots) p *= linear(r);
    return p;
  }

  static UniPoly from_roots(std::initializer_list<long long> roots) {
    std::vector<BigInt> r(roots.begin(), roots.end());
    return from_roots(std::span<const BigInt>(r));
  }

  /// (t)_j = t(t-1)...(t-j+1)
  static UniPoly falling_factorial(unsigned j) {
    UniPoly p = constant(1);
    for (unsigned i = 0; i < j; ++i) p *= linear(BigInt(i));
    return p;
  }

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }

  BigInt coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }
  BigInt leading() const { return coeffs_.empty() ? BigInt(0) : coeffs_.back(); }

  BigInt eval(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Rational eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Rational(*it);
    return acc;
  }

  UniPoly& operator+=(const UniPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), BigInt(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }

  UniPoly& operator-=(const UniPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), BigInt(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }

  UniPoly& operator*=(const UniPoly& o) {
    *this = *this * o;
    return *this;
  }

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator-(const UniPoly& a) { return UniPoly() - a; }

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return UniPoly(std::move(out));
  }

  friend UniPoly operator*(const BigInt& c, const UniPoly& p) { return UniPoly::constant(c) * p; }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

  UniPoly pow(unsigned e) const {
    UniPoly r = constant(1);
    for (unsigned i = 0; i < e; ++i) r *= *this;
    return r;
  }

  /// Quotient by (t - r) when the remainder vanishes.
  std::optional<UniPoly> divide_by_linear(const BigInt& r) const {
    if (is_zero()) return UniPoly();
    std::vector<BigInt> q(coeffs_.size() - 1, BigInt(0));
    BigInt carry = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      BigInt cur = coeffs_[i] + carry * r;
      if (i == 0) {
        if (cur != 0) return std::nullopt;
      } else {
        q[i - 1] = cur;
        carry = cur;
      }
    }
    return UniPoly(std::move(q));
  }

  std::string to_string(const std::string& var = "t") const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      const BigInt& c = coeffs_[i];
      if (c == 0) continue;
      const bool neg = c < 0;
      BigInt mag = neg ? BigInt(-c) : c;
      if (out.empty()) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      const bool show_mag = (mag != 1) || i == 0;
      if (show_mag) out += mag.str();
      if (i > 0) {
        if (show_mag) out += "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const UniPoly& p) { return os << p.to_string(); }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<BigInt> coeffs_;
};

struct FactorizationReport {
  std::vector<BigInt> roots;  // ascending, with multiplicity
  UniPoly cofactor;
  bool complete = false;
};

/// Strips every root in Z_{>=0} (with multiplicity) from p.
/// Positive roots divide the constant term left after removing t-factors and
/// lie below the Cauchy bound, so the scan over that range is exhaustive.
inline FactorizationReport nonneg_integer_roots(const UniPoly& p) {
  if (p.is_zero()) fail(ErrorCode::ZeroPolynomial, "root extraction on the zero polynomial");
  FactorizationReport rep;
  UniPoly cur = p;
  while (cur.degree() > 0 && cur.coeff(0) == 0) {
    cur = *cur.divide_by_linear(0);
    rep.roots.emplace_back(0);
  }
  if (cur.degree() > 0) {
    const BigInt c0 = big_abs(cur.coeff(0));
    BigInt max_ratio = 0;
    const BigInt lead = big_abs(cur.leading());
    for (int i = 0; i < cur.degree(); ++i) {
      BigInt r = big_abs(cur.coeff(i)) / lead + 1;
      if (r > max_ratio) max_ratio = r;
    }
    const BigInt bound = std::min(c0, BigInt(max_ratio + 1));
    constexpr long long kScanLimit = 50'000'000;
    if (bound > kScanLimit)
      fail(ErrorCode::ParameterOutOfRange, "root bound " + bound.str() + " exceeds the scan limit");
    const long long limit = bound.convert_to<long long>();
    for (long long r = 1; r <= limit && cur.degree() > 0; ++r) {
      if (c0 % r != 0) continue;
      while (cur.degree() > 0) {
        auto q = cur.divide_by_linear(BigInt(r));
        if (!q) break;
        cur = std::move(*q);
        rep.roots.emplace_back(r);
      }
    }
  }
  rep.complete = (cur == UniPoly::constant(1));
  rep.cofactor = std::move(cur);
  return rep;
}

/// p(t) = sum_j coeffs[j] * (t)_j
struct FallingFactorialExpansion {
  std::map<unsigned, BigInt> coeffs;

  UniPoly reconstruct() const {
    UniPoly p;
    for (const auto& [j, c] : coeffs) p += c * UniPoly::falling_factorial(j);
    return p;
  }
};

/// Newton forward differences at 0,1,2,...: c_j = (Delta^j p)(0) / j!.
inline FallingFactorialExpansion to_falling_factorial(const UniPoly& p) {
  FallingFactorialExpansion out;
  if (p.is_zero()) return out;
  const unsigned d = static_cast<unsigned>(p.degree());
  std::vector<BigInt> diff;
  diff.reserve(d + 1);
  for (unsigned i = 0; i <= d; ++i) diff.push_back(p.eval(BigInt(i)));
  for (unsigned j = 0; j <= d; ++j) {
    BigInt fact = factorial(j);
    if (diff[0] % fact != 0) fail(ErrorCode::InvalidArgument, "non-integral falling factorial coefficient");
    if (diff[0] != 0) out.coeffs[j] = diff[0] / fact;
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
    diff.pop_back();
  }
  if (!(out.reconstruct() == p))
    fail(ErrorCode::InvalidArgument, "falling factorial reconstruction mismatch");
  return out;
}

/// Exact interpolation through integer samples; the result must have integer
/// coefficients (it does whenever the samples come from an integer polynomial).
inline UniPoly interpolate(std::span<const std::pair<BigInt, BigInt>> samples) {
  const std::size_t m = samples.size();
  if (m == 0) return {};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (samples[i].first == samples[j].first)
        fail(ErrorCode::InvalidArgument, "duplicate interpolation node");
  // Newton divided differences.
  std::vector<Rational> dd;
  dd.reserve(m);
  for (const auto& s : samples) dd.emplace_back(s.second);
  for (std::size_t level = 1; level < m; ++level)
    for (std::size_t i = m - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / Rational(samples[i].first - samples[i - level].first);
      if (i == level) break;
    }
  // Horner expansion of the Newton form with rational coefficients.
  std::vector<Rational> poly{dd[m - 1]};
  for (std::size_t k = m - 1; k-- > 0;) {
    const Rational x0(samples[k].first);
    std::vector<Rational> next(poly.size() + 1, Rational(0));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= x0 * poly[i];
    }
    next[0] += dd[k];
    poly = std::move(next);
  }
  std::vector<BigInt> out;
  out.reserve(poly.size());
  for (const auto& q : poly) {
    if (!is_integral(q)) fail(ErrorCode::InvalidArgument, "interpolated polynomial has non-integral coefficients");
    out.push_back(numerator_of(q));
  }
  return UniPoly(std::move(out));
}

}  // namespace charfactor
