#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "charfactor/numeric.hpp"

namespace charfactor {

using RationalRow = std::vector<Rational>;
using RationalMatrix = std::vector<RationalRow>;

/// Reduced row-echelon form with zero rows removed. Pivots are 1 and every
/// pivot column is zero elsewhere, so the result is canonical for the row space.
inline RationalMatrix rref(RationalMatrix m) {
  if (m.empty()) return m;
  const std::size_t cols = m.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    const Rational inv = Rational(1) / m[r][c];
    for (std::size_t k = c; k < cols; ++k) m[r][k] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational factor = m[i][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= factor * m[r][k];
    }
    ++r;
  }
  m.resize(r);
  return m;
}

inline std::size_t rank(const RationalMatrix& m) { return rref(m).size(); }

/// Basis of {x : m x = 0} in RREF (rows span the kernel).
inline RationalMatrix nullspace_basis(const RationalMatrix& m, std::size_t cols) {
  const RationalMatrix r = rref(m);
  std::vector<int> pivot_of_col(cols, -1);
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t c = 0; c < cols; ++c)
      if (r[i][c] != 0) {
        pivot_of_col[c] = static_cast<int>(i);
        break;
      }
  RationalMatrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (pivot_of_col[free] >= 0) continue;
    RationalRow v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t c = 0; c < cols; ++c)
      if (pivot_of_col[c] >= 0) v[c] = -r[static_cast<std::size_t>(pivot_of_col[c])][free];
    basis.push_back(std::move(v));
  }
  return rref(std::move(basis));
}

/// Rank over F_p of an integer matrix.
inline std::size_t rank_mod_p(const std::vector<std::vector<BigInt>>& m, std::uint64_t p) {
  if (m.empty()) return 0;
  const std::size_t cols = m.front().size();
  std::vector<std::vector<std::int64_t>> a;
  a.reserve(m.size());
  const BigInt bp(p);
  for (const auto& row : m) {
    std::vector<std::int64_t> r;
    r.reserve(cols);
    for (const auto& v : row) {
      BigInt x = v % bp;
      if (x < 0) x += bp;
      r.push_back(x.convert_to<std::int64_t>());
    }
    a.push_back(std::move(r));
  }
  const auto mod = static_cast<std::int64_t>(p);
  auto inverse = [mod](std::int64_t v) {
    std::int64_t result = 1, base = v % mod, e = mod - 2;
    while (e > 0) {
      if (e & 1) result = static_cast<std::int64_t>((__int128)result * base % mod);
      base = static_cast<std::int64_t>((__int128)base * base % mod);
      e >>= 1;
    }
    return result;
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[r], a[piv]);
    const std::int64_t inv = inverse(a[r][c]);
    for (std::size_t k = c; k < cols; ++k) a[r][k] = static_cast<std::int64_t>((__int128)a[r][k] * inv % mod);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const std::int64_t f = a[i][c];
      for (std::size_t k = c; k < cols; ++k) {
        a[i][k] = static_cast<std::int64_t>(((__int128)a[i][k] - (__int128)f * a[r][k]) % mod);
        if (a[i][k] < 0) a[i][k] += mod;
      }
    }
    ++r;
  }
  return r;
}

}  // namespace charfactor
