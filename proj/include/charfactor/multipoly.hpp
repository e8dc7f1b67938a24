#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "charfactor/numeric.hpp"

namespace charfactor {

using Exponent = std::vector<unsigned>;

/// Graded lexicographic order: total degree first, then lexicographic with x1 > x2 > ...
struct GrlexLess {
  bool operator()(const Exponent& a, const Exponent& b) const {
    const unsigned da = std::accumulate(a.begin(), a.end(), 0u);
    const unsigned db = std::accumulate(b.begin(), b.end(), 0u);
    if (da != db) return da < db;
    return a < b;
  }
};

/// Multivariate polynomial in x1..xn with exact rational coefficients.
class MultiPoly {
 public:
  using TermMap = std::map<Exponent, Rational, GrlexLess>;

  MultiPoly() = default;
  explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

  static MultiPoly constant(std::size_t nvars, const Rational& c) {
    MultiPoly p(nvars);
    if (c != 0) p.terms_.emplace(Exponent(nvars, 0), c);
    return p;
  }

  /// x_i with 0-based index i.
  static MultiPoly variable(std::size_t nvars, std::size_t i, unsigned power = 1) {
    if (i >= nvars) fail(ErrorCode::IndexOutOfRange, "variable index " + std::to_string(i));
    Exponent e(nvars, 0);
    e[i] = power;
    MultiPoly p(nvars);
    p.terms_.emplace(std::move(e), Rational(1));
    return p;
  }

  static MultiPoly monomial(Exponent e, const Rational& c) {
    MultiPoly p(e.size());
    if (c != 0) p.terms_.emplace(std::move(e), c);
    return p;
  }

  /// sum_i coeffs[i] * x_i + constant_term
  static MultiPoly linear_form(std::span<const Rational> coeffs, const Rational& constant_term = 0) {
    MultiPoly p = constant(coeffs.size(), constant_term);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (coeffs[i] != 0) p += variable(coeffs.size(), i) * coeffs[i];
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
  }

  Rational constant_term() const {
    auto it = terms_.find(Exponent(nvars_, 0));
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  static unsigned total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0u); }

  /// -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : static_cast<int>(total_degree(terms_.rbegin()->first)); }

  /// Common total degree of all terms, if the polynomial is homogeneous and nonzero.
  std::optional<unsigned> homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    const unsigned d = total_degree(terms_.begin()->first);
    if (total_degree(terms_.rbegin()->first) != d) return std::nullopt;
    return d;
  }

  std::pair<Exponent, Rational> leading_term() const {
    if (terms_.empty()) fail(ErrorCode::ZeroPolynomial, "leading term of zero polynomial");
    return *terms_.rbegin();
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  MultiPoly& operator-=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  MultiPoly& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator-(MultiPoly a) { return a *= Rational(-1); }
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_compatible(b);
    MultiPoly out(std::max(a.nvars_, b.nvars_));
    Exponent e(out.nvars_, 0);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }

  MultiPoly& operator*=(const MultiPoly& o) {
    *this = *this * o;
    return *this;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.terms_ == b.terms_ && (a.nvars_ == b.nvars_ || (a.is_zero() && b.is_zero()));
  }

  MultiPoly pow(unsigned k) const {
    MultiPoly r = constant(nvars_, 1);
    for (unsigned i = 0; i < k; ++i) r *= *this;
    return r;
  }

  Rational evaluate(std::span<const Rational> point) const {
    if (point.size() != nvars_) fail(ErrorCode::DimensionMismatch, "evaluation point has wrong length");
    Rational acc = 0;
    for (const auto& [e, c] : terms_) {
      Rational term = c;
      for (std::size_t i = 0; i < nvars_; ++i)
        for (unsigned k = 0; k < e[i]; ++k) term *= point[i];
      acc += term;
    }
    return acc;
  }

  /// Replaces x_var by the polynomial value (composition).
  MultiPoly substitute(std::size_t var, const MultiPoly& value) const {
    if (var >= nvars_) fail(ErrorCode::IndexOutOfRange, "substitution variable");
    MultiPoly out(nvars_);
    for (const auto& [e, c] : terms_) {
      Exponent rest = e;
      const unsigned k = rest[var];
      rest[var] = 0;
      out += monomial(rest, c) * value.pow(k);
    }
    return out;
  }

  /// Positive rational g with this = g * (primitive integer polynomial).
  Rational content() const {
    if (terms_.empty()) return 1;
    BigInt num = 0, den = 1;
    for (const auto& [e, c] : terms_) {
      num = big_gcd(num, numerator_of(c));
      den = big_lcm(den, denominator_of(c));
    }
    return Rational(num, den);
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      const bool neg = c < 0;
      const Rational mag = neg ? Rational(-c) : c;
      if (out.empty()) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      std::string mono;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += "x" + std::to_string(i + 1);
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      if (mono.empty()) {
        out += charfactor::to_string(mag);
      } else if (mag == 1) {
        out += mono;
      } else {
        out += charfactor::to_string(mag) + "*" + mono;
      }
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }

 private:
  void check_compatible(const MultiPoly& o) const {
    if (nvars_ != o.nvars_ && !is_zero() && !o.is_zero())
      fail(ErrorCode::DimensionMismatch, "polynomials in different variable counts");
  }

  void add_term(const Exponent& e, const Rational& c) {
    if (c == 0) return;
    if (nvars_ < e.size()) nvars_ = e.size();
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::size_t nvars_ = 0;
  TermMap terms_;
};

/// Leading-term division by a single polynomial. Returns the quotient exactly
/// when the division leaves no remainder.
inline std::optional<MultiPoly> exact_divide(const MultiPoly& p, const MultiPoly& d) {
  if (d.is_zero()) fail(ErrorCode::ZeroDivisor, "division by the zero polynomial");
  const auto [lead_e, lead_c] = d.leading_term();
  MultiPoly rem = p;
  MultiPoly quot(std::max(p.nvars(), d.nvars()));
  while (!rem.is_zero()) {
    const auto [re, rc] = rem.leading_term();
    Exponent qe(re.size(), 0);
    for (std::size_t i = 0; i < re.size(); ++i) {
      if (re[i] < lead_e[i]) return std::nullopt;
      qe[i] = re[i] - lead_e[i];
    }
    MultiPoly q = MultiPoly::monomial(std::move(qe), rc / lead_c);
    rem -= q * d;
    quot += q;
  }
  return quot;
}

struct DivisionResult {
  bool divides = false;
  std::optional<MultiPoly> quotient;
};

namespace detail {

/// Division by a linear form a_v*x_v + rest (rest free of x_v), viewing the
/// dividend as a polynomial in x_v over Q[other variables].
inline DivisionResult divide_by_linear_form(const MultiPoly& d, const MultiPoly& p) {
  const std::size_t n = std::max(d.nvars(), p.nvars());
  std::size_t pivot = n;
  Rational lead;
  for (const auto& [e, c] : d.terms())
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] == 1 && (pivot == n || i < pivot)) {
        pivot = i;
        lead = c;
      }
  MultiPoly rest = d - MultiPoly::variable(n, pivot) * lead;

  // Group the dividend by powers of the pivot variable.
  std::vector<MultiPoly> by_power;
  for (const auto& [e, c] : p.terms()) {
    Exponent base = e;
    const unsigned k = base[pivot];
    base[pivot] = 0;
    if (by_power.size() <= k) by_power.resize(k + 1, MultiPoly(n));
    by_power[k] += MultiPoly::monomial(std::move(base), c);
  }
  if (by_power.empty()) return {true, MultiPoly(n)};

  MultiPoly quotient(n);
  for (std::size_t k = by_power.size() - 1; k >= 1; --k) {
    MultiPoly q = by_power[k] * (Rational(1) / lead);
    if (!q.is_zero()) {
      by_power[k - 1] -= q * rest;
      quotient += q * MultiPoly::variable(n, pivot, static_cast<unsigned>(k - 1));
    }
  }
  if (!by_power[0].is_zero()) return {false, std::nullopt};
  return {true, std::move(quotient)};
}

}  // namespace detail

/// Decides d | p. Linear divisors use pivot substitution with synthetic
/// division; anything else falls back to leading-term division.
inline DivisionResult divides(const MultiPoly& d, const MultiPoly& p) {
  if (d.is_zero()) fail(ErrorCode::ZeroDivisor, "division by the zero polynomial");
  if (d.is_constant()) return {true, p * (Rational(1) / d.constant_term())};
  if (d.degree() == 1) return detail::divide_by_linear_form(d, p);
  auto q = exact_divide(p, d);
  return {q.has_value(), std::move(q)};
}

using PolyMatrix = std::vector<std::vector<MultiPoly>>;

namespace detail {

inline void check_square(const PolyMatrix& m, std::size_t nvars) {
  for (const auto& row : m) {
    if (row.size() != m.size()) fail(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
    for (const auto& e : row)
      if (!e.is_zero() && e.nvars() != nvars)
        fail(ErrorCode::DimensionMismatch, "matrix entries disagree on the variable count");
  }
}

inline MultiPoly determinant_cofactor_impl(const PolyMatrix& m, std::size_t nvars) {
  const std::size_t n = m.size();
  if (n == 0) return MultiPoly::constant(nvars, 1);
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  MultiPoly det(nvars);
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col].is_zero()) continue;
    PolyMatrix minor;
    minor.reserve(n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<MultiPoly> row;
      row.reserve(n - 1);
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    MultiPoly term = m[0][col] * determinant_cofactor_impl(minor, nvars);
    if (col % 2 == 0) det += term; else det -= term;
  }
  return det;
}

}  // namespace detail

/// Laplace expansion along the first row.
inline MultiPoly determinant_cofactor(const PolyMatrix& m, std::size_t nvars) {
  detail::check_square(m, nvars);
  return detail::determinant_cofactor_impl(m, nvars);
}

/// Bareiss fraction-free elimination over Q[x]; every intermediate division is exact.
/// Row contents are pulled out first so the eliminated entries stay primitive.
inline MultiPoly determinant_bareiss(PolyMatrix m, std::size_t nvars) {
  detail::check_square(m, nvars);
  const std::size_t n = m.size();
  if (n == 0) return MultiPoly::constant(nvars, 1);
  Rational scale = 1;
  for (auto& row : m) {
    BigInt num = 0, den = 1;
    bool any = false;
    for (const auto& e : row) {
      if (e.is_zero()) continue;
      const Rational c = e.content();
      num = big_gcd(num, numerator_of(c));
      den = big_lcm(den, denominator_of(c));
      any = true;
    }
    if (!any) return MultiPoly(nvars);
    const Rational row_content(num, den);
    scale *= row_content;
    for (auto& e : row) e *= Rational(1) / row_content;
  }
  MultiPoly prev = MultiPoly::constant(nvars, 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return MultiPoly(nvars);
      std::swap(m[k], m[swap_row]);
      scale = -scale;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MultiPoly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        auto q = exact_divide(num, prev);
        if (!q) fail(ErrorCode::InvalidArgument, "Bareiss step produced an inexact division");
        m[i][j] = std::move(*q);
      }
      m[i][k] = MultiPoly(nvars);
    }
    prev = m[k][k];
  }
  return m[n - 1][n - 1] * scale;
}

/// Exact determinant: cofactor expansion below 4x4, Bareiss elimination above.
inline MultiPoly multi_determinant(const PolyMatrix& m, std::size_t nvars) {
  if (m.size() < 4) return determinant_cofactor(m, nvars);
  return determinant_bareiss(m, nvars);
}

}  // namespace charfactor
