#include <catch_amalgamated.hpp>

#include <random>

#include "charfactor/polynomial.hpp"

using namespace charfactor;

namespace {

// Oracle: direct product (t)(t-1)...(t-j+1) evaluated at an integer.
BigInt falling_at(long long t, unsigned j) {
  BigInt v = 1;
  for (unsigned i = 0; i < j; ++i) v *= BigInt(t - static_cast<long long>(i));
  return v;
}

UniPoly random_poly(std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg), coef(-20, 20);
  std::vector<BigInt> c(deg(rng) + 1);
  for (auto& x : c) x = coef(rng);
  return UniPoly(std::move(c));
}

}  // namespace

TEST_CASE("evaluation") {
  const UniPoly b2 = UniPoly::from_roots({1, 3});
  CHECK(b2.eval(BigInt(5)) == 8);
  const UniPoly p{7, -2, 9};
  CHECK(p.eval(BigInt(0)) == 7);
  CHECK(UniPoly::from_roots({0, 1, 2}).eval(BigInt(-1)) == -6);
}

TEST_CASE("nonnegative integer roots") {
  auto r = nonneg_integer_roots(UniPoly{2, -3, 1});
  CHECK(r.complete);
  CHECK(r.roots == std::vector<BigInt>{1, 2});

  r = nonneg_integer_roots(UniPoly{1, 0, 1});
  CHECK_FALSE(r.complete);
  CHECK(r.roots.empty());
  CHECK(r.cofactor == UniPoly({1, 0, 1}));

  r = nonneg_integer_roots(UniPoly::from_roots({0, 3, 3}));
  CHECK(r.complete);
  CHECK(r.roots == std::vector<BigInt>{0, 3, 3});

  CHECK_THROWS_AS(nonneg_integer_roots(UniPoly()), Error);
}

TEST_CASE("root extraction reproduces the input") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    UniPoly p = random_poly(rng, 4);
    if (p.is_zero()) continue;
    std::uniform_int_distribution<int> root(0, 6), count(0, 3);
    for (int i = count(rng); i > 0; --i) p *= UniPoly::linear(root(rng));
    const auto rep = nonneg_integer_roots(p);
    UniPoly back = rep.cofactor;
    for (const auto& r : rep.roots) back *= UniPoly::linear(r);
    CHECK(back == p);
  }
}

TEST_CASE("falling factorial expansion") {
  auto f = to_falling_factorial(UniPoly::falling_factorial(3));
  CHECK(f.coeffs == std::map<unsigned, BigInt>{{3, 1}});
  f = to_falling_factorial(UniPoly::monomial(2));
  CHECK(f.coeffs == std::map<unsigned, BigInt>{{1, 1}, {2, 1}});
  for (unsigned j = 0; j < 6; ++j)
    for (long long t = -3; t < 8; ++t) CHECK(UniPoly::falling_factorial(j).eval(BigInt(t)) == falling_at(t, j));
}

TEST_CASE("falling factorial round trip on random polynomials") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const UniPoly p = random_poly(rng, 10);
    const auto f = to_falling_factorial(p);
    CHECK(f.reconstruct() == p);
    // Independent check by evaluation.
    for (long long t = -2; t <= 12; ++t) {
      BigInt v = 0;
      for (const auto& [j, c] : f.coeffs) v += c * falling_at(t, j);
      CHECK(v == p.eval(BigInt(t)));
    }
  }
}

TEST_CASE("interpolation recovers a polynomial") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const UniPoly p = random_poly(rng, 6);
    std::vector<std::pair<BigInt, BigInt>> s;
    for (int x = 0; x <= 6; ++x) s.emplace_back(2 * x + 1, p.eval(BigInt(2 * x + 1)));
    CHECK(interpolate(s) == p);
  }
  std::vector<std::pair<BigInt, BigInt>> dup{{1, 1}, {1, 2}};
  CHECK_THROWS_AS(interpolate(dup), Error);
}

TEST_CASE("text rendering") {
  CHECK(UniPoly({0, 2, -3, 1}).to_string() == "t^3 - 3*t^2 + 2*t");
  CHECK(UniPoly().to_string() == "0");
}
