#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>

#include "charfactor/multipoly.hpp"

using namespace charfactor;

namespace {

MultiPoly x(std::size_t n, std::size_t i, unsigned p = 1) { return MultiPoly::variable(n, i, p); }
MultiPoly c(std::size_t n, long long v) { return MultiPoly::constant(n, Rational(v)); }

// Oracle: Leibniz sum over permutations.
MultiPoly leibniz(const PolyMatrix& m, std::size_t nvars) {
  std::vector<std::size_t> perm(m.size());
  std::iota(perm.begin(), perm.end(), 0);
  MultiPoly det(nvars);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) ++inversions;
    MultiPoly term = c(nvars, inversions % 2 ? -1 : 1);
    for (std::size_t i = 0; i < perm.size(); ++i) term = term * m[i][perm[i]];
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

MultiPoly random_poly(std::mt19937_64& rng, std::size_t nvars, unsigned max_deg) {
  std::uniform_int_distribution<int> coef(-3, 3), terms(0, 3), deg(0, static_cast<int>(max_deg));
  MultiPoly p(nvars);
  for (int t = terms(rng); t > 0; --t) {
    Exponent e(nvars, 0);
    unsigned total = deg(rng);
    std::uniform_int_distribution<std::size_t> var(0, nvars - 1);
    for (unsigned k = 0; k < total; ++k) ++e[var(rng)];
    p += MultiPoly::monomial(std::move(e), Rational(coef(rng)));
  }
  return p;
}

PolyMatrix random_matrix(std::mt19937_64& rng, std::size_t size, std::size_t nvars) {
  PolyMatrix m(size, std::vector<MultiPoly>(size));
  for (auto& row : m)
    for (auto& e : row) e = random_poly(rng, nvars, 3);
  return m;
}

}  // namespace

TEST_CASE("vandermonde determinant") {
  PolyMatrix v(3);
  for (std::size_t i = 0; i < 3; ++i) v[i] = {c(3, 1), x(3, i), x(3, i, 2)};
  const MultiPoly expected = (x(3, 1) - x(3, 0)) * (x(3, 2) - x(3, 0)) * (x(3, 2) - x(3, 1));
  const MultiPoly d = multi_determinant(v, 3);
  CHECK((d == expected || d == -expected));
}

TEST_CASE("small determinants") {
  PolyMatrix id{{c(2, 1), c(2, 0)}, {c(2, 0), c(2, 1)}};
  CHECK(multi_determinant(id, 2) == c(2, 1));
  PolyMatrix m{{x(2, 0), x(2, 0, 3)}, {x(2, 1), x(2, 1, 3)}};
  CHECK(multi_determinant(m, 2) == x(2, 0) * x(2, 1, 3) - x(2, 1) * x(2, 0, 3));
  CHECK(multi_determinant({}, 0) == MultiPoly::constant(0, 1));
}

TEST_CASE("determinant agrees with the Leibniz oracle") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t size = 2 + trial % 3, nvars = 1 + trial % 3;
    const PolyMatrix m = random_matrix(rng, size, nvars);
    const MultiPoly oracle = leibniz(m, nvars);
    CHECK(determinant_cofactor(m, nvars) == oracle);
    CHECK(determinant_bareiss(m, nvars) == oracle);
    CHECK(multi_determinant(m, nvars) == oracle);
  }
}

TEST_CASE("determinant is alternating in columns") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t size = 2 + trial % 3;
    PolyMatrix m = random_matrix(rng, size, 3);
    const MultiPoly d = multi_determinant(m, 3);
    for (auto& row : m) std::swap(row[0], row[size - 1]);
    CHECK(multi_determinant(m, 3) == -d);
  }
}

TEST_CASE("divisibility by linear forms") {
  auto r = divides(x(2, 0) - x(2, 1), x(2, 0, 3) - x(2, 1, 3));
  REQUIRE(r.divides);
  CHECK(*r.quotient == x(2, 0, 2) + x(2, 0) * x(2, 1) + x(2, 1, 2));
  CHECK_FALSE(divides(x(2, 0) + x(2, 1), x(2, 0, 2) + x(2, 1, 2)).divides);
  for (unsigned d = 0; d < 4; ++d) CHECK(divides(x(1, 0), x(1, 0, 2 * d + 1)).divides);
  CHECK_THROWS_AS(divides(MultiPoly(2), x(2, 0)), Error);
}

TEST_CASE("division matches substitution") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3;
    std::uniform_int_distribution<int> coef(-2, 2);
    std::vector<Rational> a(n);
    for (auto& v : a) v = coef(rng);
    if (std::all_of(a.begin(), a.end(), [](const Rational& v) { return v == 0; })) a[0] = 1;
    const MultiPoly alpha = MultiPoly::linear_form(a);
    MultiPoly p = random_poly(rng, n, 3);
    if (trial % 2) p = p * alpha;
    const auto r = divides(alpha, p);
    // Oracle: solve alpha for its first nonzero variable and substitute.
    std::size_t v = 0;
    while (a[v] == 0) ++v;
    MultiPoly solved(n);
    for (std::size_t i = 0; i < n; ++i)
      if (i != v && a[i] != 0) solved -= x(n, i) * (a[i] / a[v]);
    const bool vanishes = p.substitute(v, solved).is_zero();
    CHECK(r.divides == vanishes);
    if (r.divides) CHECK(alpha * *r.quotient == p);
    if (trial % 2) CHECK(r.divides);
  }
}

TEST_CASE("general division fallback") {
  const MultiPoly d = x(2, 0, 2) + x(2, 1);
  const MultiPoly q = x(2, 0) - c(2, 3);
  const auto r = divides(d, d * q);
  REQUIRE(r.divides);
  CHECK(*r.quotient == q);
}
