#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "charfactor/poset.hpp"

namespace charfactor {

/// Element of the incidence algebra: a rational value on every interval [x, y].
class IncidenceFunction {
 public:
  explicit IncidenceFunction(Poset p) : poset_(std::move(p)), values_(poset_.size() * poset_.size(), Rational(0)) {}

  static IncidenceFunction from(const Poset& p, const std::function<Rational(ElementId, ElementId)>& f) {
    IncidenceFunction out(p);
    for (ElementId x = 0; x < p.size(); ++x)
      for (ElementId y = p.up_set(x).find_first(); y != Bitset::npos; y = p.up_set(x).find_next(y))
        out.values_[out.index(x, y)] = f(x, y);
    return out;
  }

  static IncidenceFunction zeta(const Poset& p) {
    return from(p, [](ElementId, ElementId) { return Rational(1); });
  }

  static IncidenceFunction delta(const Poset& p) {
    return from(p, [](ElementId x, ElementId y) { return Rational(x == y ? 1 : 0); });
  }

  static IncidenceFunction mobius(const Poset& p) {
    return from(p, [&](ElementId x, ElementId y) { return Rational(p.mobius_row(x)[y]); });
  }

  const Poset& poset() const { return poset_; }

  const Rational& at(ElementId x, ElementId y) const {
    check(x, y);
    return values_[index(x, y)];
  }

  void set(ElementId x, ElementId y, Rational v) {
    check(x, y);
    values_[index(x, y)] = std::move(v);
  }

  friend bool operator==(const IncidenceFunction& a, const IncidenceFunction& b) {
    return a.poset_.same_as(b.poset_) && a.values_ == b.values_;
  }

 private:
  std::size_t index(ElementId x, ElementId y) const { return x * poset_.size() + y; }

  void check(ElementId x, ElementId y) const {
    poset_.check_index(x);
    poset_.check_index(y);
    if (!poset_.leq(x, y)) fail(ErrorCode::NotComparable, "[" + poset_.label(x) + ", " + poset_.label(y) + "] is not an interval");
  }

  Poset poset_;
  std::vector<Rational> values_;
};

/// (f*g)(x, y) = sum_{x <= z <= y} f(x, z) g(z, y)
inline IncidenceFunction convolve(const IncidenceFunction& f, const IncidenceFunction& g) {
  if (!f.poset().same_as(g.poset())) fail(ErrorCode::PosetMismatch, "convolution of functions on different posets");
  const Poset& p = f.poset();
  return IncidenceFunction::from(p, [&](ElementId x, ElementId y) {
    Rational acc = 0;
    const Bitset between = p.up_set(x) & p.down_set(y);
    for (ElementId z = between.find_first(); z != Bitset::npos; z = between.find_next(z)) acc += f.at(x, z) * g.at(z, y);
    return acc;
  });
}

/// Two-sided inverse by triangular solve along a linear extension.
inline IncidenceFunction incidence_invert(const IncidenceFunction& f) {
  const Poset& p = f.poset();
  for (ElementId x = 0; x < p.size(); ++x)
    if (f.at(x, x) == 0) fail(ErrorCode::NotInvertible, "zero diagonal value at " + p.label(x));
  IncidenceFunction g(p);
  for (ElementId x = 0; x < p.size(); ++x) {
    for (ElementId y : p.linear_extension()) {
      if (!p.leq(x, y)) continue;
      if (x == y) {
        g.set(x, x, Rational(1) / f.at(x, x));
        continue;
      }
      // sum_{x <= z <= y} g(x, z) f(z, y) = 0
      Rational acc = 0;
      const Bitset between = p.up_set(x) & p.down_set(y);
      for (ElementId z = between.find_first(); z != Bitset::npos; z = between.find_next(z))
        if (z != y) acc += g.at(x, z) * f.at(z, y);
      g.set(x, y, -acc / f.at(y, y));
    }
  }
  return g;
}

enum class InversionDirection { down, up };

struct InversionResult {
  std::vector<Rational> f;
  std::vector<Rational> g_recovered;
};

/// down: f(x) = sum_{y <= x} g(y), then g(x) = sum_{y <= x} mu(y, x) f(y).
/// up:   f(x) = sum_{y >= x} g(y), then g(x) = sum_{y >= x} mu(x, y) f(y).
inline InversionResult mobius_inversion(const Poset& p, const std::vector<Rational>& g, InversionDirection dir) {
  if (g.size() != p.size()) fail(ErrorCode::SizeMismatch, "function length differs from poset size");
  const std::size_t n = p.size();
  InversionResult out;
  out.f.assign(n, Rational(0));
  out.g_recovered.assign(n, Rational(0));
  for (ElementId x = 0; x < n; ++x) {
    const Bitset& range = dir == InversionDirection::down ? p.down_set(x) : p.up_set(x);
    for (ElementId y = range.find_first(); y != Bitset::npos; y = range.find_next(y)) out.f[x] += g[y];
  }
  for (ElementId x = 0; x < n; ++x) {
    const Bitset& range = dir == InversionDirection::down ? p.down_set(x) : p.up_set(x);
    for (ElementId y = range.find_first(); y != Bitset::npos; y = range.find_next(y)) {
      const BigInt& mu = dir == InversionDirection::down ? p.mobius_row(y)[x] : p.mobius_row(x)[y];
      out.g_recovered[x] += Rational(mu) * out.f[y];
    }
  }
  return out;
}

}  // namespace charfactor
