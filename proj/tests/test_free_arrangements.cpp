#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "charfactor/free_arrangements.hpp"
#include "support.hpp"

using namespace charfactor;

namespace {

MultiPoly x(std::size_t n, std::size_t i, unsigned p = 1) { return MultiPoly::variable(n, i, p); }

std::vector<int> odd(unsigned n) {
  std::vector<int> v;
  for (unsigned i = 0; i < n; ++i) v.push_back(2 * i + 1);
  return v;
}

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Oracle: Q as an explicit product of the family's linear forms.
MultiPoly product_of_forms(std::size_t n, bool with_plus, bool with_coords) {
  MultiPoly q = MultiPoly::constant(n, 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      q *= x(n, i) - x(n, j);
      if (with_plus) q *= x(n, i) + x(n, j);
    }
  if (with_coords)
    for (std::size_t i = 0; i < n; ++i) q *= x(n, i);
  return q;
}

}  // namespace

TEST_CASE("defining forms") {
  const MultiPoly qa = defining_form(weyl_arrangement(WeylKind::A, 2));
  CHECK((qa == x(2, 0) - x(2, 1) || qa == x(2, 1) - x(2, 0)));
  const MultiPoly qb = defining_form(weyl_arrangement(WeylKind::B, 2));
  const MultiPoly expected = x(2, 0) * x(2, 1) * (x(2, 0, 2) - x(2, 1, 2));
  CHECK((qb == expected || qb == -expected));
  CHECK(defining_form(Arrangement(3, {})) == MultiPoly::constant(3, 1));
  for (unsigned n = 1; n <= 4; ++n) {
    const MultiPoly q = defining_form(weyl_arrangement(WeylKind::B, n)), o = product_of_forms(n, true, true);
    CHECK((q == o || q == -o));
  }
}

TEST_CASE("named derivations") {
  const Derivation x1 = named_derivation(DerivationKind::power, 3, 1);
  CHECK(x1 == Derivation({x(3, 0), x(3, 1), x(3, 2)}));
  CHECK(x1.degree() == 0);
  CHECK(named_derivation(DerivationKind::hat, 2) == Derivation({x(2, 1), x(2, 0)}));
  const MultiPoly p = x(3, 0) * x(3, 1) * x(3, 2);
  CHECK(named_derivation(DerivationKind::theta, 3, 3) == p * named_derivation(DerivationKind::hat, 3));
  CHECK(named_derivation(DerivationKind::theta, 3, 3)[0] == x(3, 0) * x(3, 1, 2) * x(3, 2, 2));
}

TEST_CASE("derivation module membership") {
  CHECK(is_in_derivation_module(power_derivation(3, 2), weyl_arrangement(WeylKind::A, 3)));
  CHECK_FALSE(is_in_derivation_module(power_derivation(2, 2), weyl_arrangement(WeylKind::B, 2)));
  CHECK(is_in_derivation_module(named_derivation(DerivationKind::hat, 3), weyl_arrangement(WeylKind::D, 3)));
  for (unsigned n = 1; n <= 4; ++n)
    for (unsigned d = 0; d <= 3; ++d) {
      CHECK(is_in_derivation_module(power_derivation(n, 2 * d + 1), weyl_arrangement(WeylKind::B, n)));
      CHECK(is_in_derivation_module(power_derivation(n, 2 * d + 1), weyl_arrangement(WeylKind::D, n)));
    }
  CHECK_THROWS_AS(is_in_derivation_module(power_derivation(2, 1), weyl_arrangement(WeylKind::A, 3)), Error);
}

TEST_CASE("saito certificates for the families") {
  auto r = saito_check(family_basis(FreeFamily::A, 3), weyl_arrangement(WeylKind::A, 3));
  CHECK(r.is_basis);
  CHECK(r.exponents == std::vector<int>{0, 1, 2});
  CHECK(r.chi == UniPoly::from_roots({0, 1, 2}));
  r = saito_check(family_basis(FreeFamily::B, 2), weyl_arrangement(WeylKind::B, 2));
  CHECK(r.exponents == std::vector<int>{1, 3});
  r = saito_check(family_basis(FreeFamily::DB, 3, 1), db_arrangement(3, 1));
  CHECK(r.is_basis);
  CHECK(r.exponents == std::vector<int>{1, 3, 3});

  for (unsigned n = 1; n <= 4; ++n) {
    std::vector<int> a(n);
    for (unsigned i = 0; i < n; ++i) a[i] = static_cast<int>(i);
    const struct {
      FreeFamily f;
      WeylKind w;
      std::vector<int> exps;
    } cases[] = {{FreeFamily::A, WeylKind::A, a}, {FreeFamily::B, WeylKind::B, odd(n)}};
    for (const auto& c : cases) {
      const Arrangement arr = weyl_arrangement(c.w, n);
      const auto rep = saito_check(family_basis(c.f, n), arr);
      REQUIRE(rep.is_basis);
      CHECK(rep.exponents == c.exps);
      CHECK(rep.chi == charpoly_arrangement(arr));
    }
    if (n >= 2) {
      std::vector<int> d = odd(n - 1);
      d.push_back(static_cast<int>(n) - 1);
      const Arrangement arr = weyl_arrangement(WeylKind::D, n);
      const auto rep = saito_check(family_basis(FreeFamily::D, n), arr);
      REQUIRE(rep.is_basis);
      CHECK(rep.exponents == sorted(d));
      CHECK(rep.chi == charpoly_arrangement(arr));
    }
  }
}

TEST_CASE("interpolating arrangements") {
  for (unsigned n = 2; n <= 4; ++n) {
    const MultiPoly det_d = saito_check(family_basis(FreeFamily::D, n), weyl_arrangement(WeylKind::D, n)).determinant;
    for (unsigned k = 0; k <= n; ++k) {
      const Arrangement arr = db_arrangement(n, k);
      const auto rep = saito_check(family_basis(FreeFamily::DB, n, k), arr);
      REQUIRE(rep.is_basis);
      std::vector<int> e = odd(n - 1);
      e.push_back(static_cast<int>(n + k) - 1);
      CHECK(rep.exponents == sorted(e));
      CHECK(rep.chi == charpoly_arrangement(arr));
      MultiPoly xs = MultiPoly::constant(n, 1);
      for (unsigned i = 0; i < k; ++i) xs *= x(n, i);
      CHECK(rep.determinant == xs * det_d);
    }
  }
}

TEST_CASE("saito invariants") {
  std::mt19937_64 rng(61);
  for (unsigned n = 2; n <= 4; ++n) {
    const Arrangement arr = weyl_arrangement(WeylKind::B, n);
    DerivationMatrix basis = family_basis(FreeFamily::B, n);
    const auto base = saito_check(basis, arr);
    int sum = 0;
    for (int e : base.exponents) sum += e;
    CHECK(static_cast<std::size_t>(sum) == arr.size());
    for (int trial = 0; trial < 4; ++trial) {
      std::shuffle(basis.begin(), basis.end(), rng);
      const auto r = saito_check(basis, arr);
      CHECK(r.is_basis);
      CHECK((r.determinant == base.determinant || r.determinant == -base.determinant));
    }
  }
}

TEST_CASE("saito rejections") {
  const Arrangement b2 = weyl_arrangement(WeylKind::B, 2);
  DerivationMatrix not_module{power_derivation(2, 1), power_derivation(2, 2)};
  try {
    saito_check(not_module, b2);
    FAIL("expected NotInModule");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInModule);
  }
  DerivationMatrix too_big{power_derivation(2, 1), power_derivation(2, 5)};
  const auto r = saito_check(too_big, b2);
  CHECK_FALSE(r.is_basis);
  CHECK_FALSE(r.reason.empty());
  DerivationMatrix dependent{power_derivation(2, 1), power_derivation(2, 1)};
  CHECK_FALSE(saito_check(dependent, b2).is_basis);
  DerivationMatrix mixed{power_derivation(2, 1), Derivation({x(2, 0, 3) + x(2, 0) * x(2, 1, 4), x(2, 1, 3)})};
  CHECK_THROWS_AS(saito_check(mixed, weyl_arrangement(WeylKind::A, 2)), Error);
  CHECK_THROWS_AS(saito_check({power_derivation(2, 1)}, b2), Error);
}

TEST_CASE("discovered bases") {
  for (unsigned n = 1; n <= 4; ++n)
    for (auto w : {WeylKind::A, WeylKind::B, WeylKind::D}) {
      const Arrangement arr = weyl_arrangement(w, n);
      const auto basis = discover_basis(arr);
      REQUIRE(basis);
      CHECK(saito_check(*basis, arr).chi == charpoly_arrangement(arr));
    }
  // Any central arrangement in the plane is free.
  const Arrangement three(2, {Flat::hyperplane({Rational(1), Rational(0)}), Flat::hyperplane({Rational(0), Rational(1)}),
                              Flat::hyperplane({Rational(1), Rational(2)})});
  const auto basis = discover_basis(three);
  REQUIRE(basis);
  CHECK(saito_check(*basis, three).exponents == std::vector<int>{1, 2});
}

TEST_CASE("addition deletion") {
  const Arrangement b2 = weyl_arrangement(WeylKind::B, 2);
  for (std::size_t h = 0; h < b2.size(); ++h) {
    const auto r = addition_deletion_check(b2, h);
    CHECK(r.pattern_holds);
  }
  // DB(3,2) with H = x2: deletion is DB(3,1).
  const Arrangement db32 = db_arrangement(3, 2);
  SuppliedBases sb;
  sb.original = family_basis(FreeFamily::DB, 3, 2);
  sb.deleted = family_basis(FreeFamily::DB, 3, 1);
  const auto r = addition_deletion_check(db32, db32.size() - 1, sb);
  CHECK(r.pattern_holds);
  CHECK(r.certificates[0].exponents == std::vector<int>{1, 3, 4});
  CHECK(r.certificates[1].exponents == std::vector<int>{1, 3, 3});
  CHECK(r.certificates[2].exponents == std::vector<int>{1, 3});

  const Arrangement line(1, {Flat::hyperplane({Rational(1)})});
  const auto one = addition_deletion_check(line, 0);
  CHECK(one.pattern_holds);
}

TEST_CASE("inductive freeness") {
  for (unsigned n = 1; n <= 3; ++n) CHECK(is_inductively_free(Arrangement(n, {})).free);
  const auto a3 = is_inductively_free(weyl_arrangement(WeylKind::A, 3));
  CHECK(a3.free);
  CHECK(a3.exponents == std::vector<int>{0, 1, 2});
  CHECK(a3.deletion_chain.size() == 3);
  const auto b2 = is_inductively_free(weyl_arrangement(WeylKind::B, 2));
  CHECK(b2.free);
  CHECK(b2.exponents == std::vector<int>{1, 3});
  CHECK_THROWS_AS(is_inductively_free(weyl_arrangement(WeylKind::B, 4), 10), Error);
  CHECK(is_recursively_free(weyl_arrangement(WeylKind::A, 2)) == Tristate::unknown);

  // Four generic planes through the origin in R^3 are not free.
  const Arrangement generic(3, {Flat::hyperplane({Rational(1), Rational(0), Rational(0)}),
                                Flat::hyperplane({Rational(0), Rational(1), Rational(0)}),
                                Flat::hyperplane({Rational(0), Rational(0), Rational(1)}),
                                Flat::hyperplane({Rational(1), Rational(1), Rational(1)})});
  CHECK_FALSE(is_inductively_free(generic).free);
}
