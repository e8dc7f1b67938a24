// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "charfactor.hpp"
#include "../support.hpp"

using namespace charfactor;
using namespace testing_support;

namespace {

struct Verdict {
  bool ok = true;
  std::vector<std::string> notes;
  void fail(const std::string& why) {
    ok = false;
    if (notes.size() < 8) notes.push_back(why);
  }
  void expect(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

UniPoly roots(const std::vector<long long>& r) {
  UniPoly p = UniPoly::constant(1);
  for (long long v : r) p *= UniPoly::linear(v);
  return p;
}

std::vector<long long> range(long long from, long long step, unsigned count) {
  std::vector<long long> v;
  for (unsigned i = 0; i < count; ++i) v.push_back(from + step * i);
  return v;
}

BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt pow2(unsigned n) { return BigInt(1) << n; }

std::string name(const std::string& family, unsigned n, int k = -1) {
  return family + "(" + std::to_string(n) + (k >= 0 ? "," + std::to_string(k) : "") + ")";
}

struct CorpusEntry {
  std::string label;
  Arrangement arrangement;
  std::optional<DerivationMatrix> basis;
};

std::vector<CorpusEntry> corpus() {
  std::vector<CorpusEntry> c;
  for (unsigned n = 1; n <= 4; ++n) {
    c.push_back({name("A", n), weyl_arrangement(WeylKind::A, n), family_basis(FreeFamily::A, n)});
    c.push_back({name("B", n), weyl_arrangement(WeylKind::B, n), family_basis(FreeFamily::B, n)});
    c.push_back({name("D", n), weyl_arrangement(WeylKind::D, n), family_basis(FreeFamily::D, n)});
    c.push_back({name("Shi", n), shi_arrangement(n), std::nullopt});
    for (unsigned k = 0; k <= n; ++k)
      c.push_back({name("DB", n, k), db_arrangement(n, k), family_basis(FreeFamily::DB, n, k)});
    for (unsigned k = 2; k <= n; ++k) c.push_back({name("kequal", n, k), k_equal_arrangement(n, k), std::nullopt});
  }
  std::mt19937_64 rng(4);
  for (int i = 0; i < 25; ++i) c.push_back({"subB4#" + std::to_string(i), random_sub_bn(rng, 4), std::nullopt});
  return c;
}

// --- criteria --------------------------------------------------------------

Verdict weyl_table() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  for (unsigned n = 1; n <= 5; ++n) {
    std::vector<long long> d = range(1, 2, n - 1);
    d.push_back(n - 1);
    v.expect(charpoly_arrangement(weyl_arrangement(WeylKind::A, n)) == roots(range(0, 1, n)), name("A", n));
    v.expect(charpoly_arrangement(weyl_arrangement(WeylKind::B, n)) == roots(range(1, 2, n)), name("B", n));
    v.expect(charpoly_arrangement(weyl_arrangement(WeylKind::D, n)) == roots(d), name("D", n));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  v.expect(secs < 120, "took " + std::to_string(secs) + " s");
  v.notes.push_back(std::to_string(secs) + " s");
  return v;
}

Verdict method_agreement() {
  Verdict v;
  std::size_t objects = 0, runs = 0;
  for (const auto& e : corpus()) {
    const Arrangement& a = e.arrangement;
    std::vector<std::pair<std::string, UniPoly>> got;
    got.emplace_back("lattice", charpoly_arrangement(a));
    if (a.is_hyperplane_arrangement() && a.is_central()) {
      try {
        got.emplace_back("coloring", chromatic_polynomial(graph_of(a)));
      } catch (const Error& err) {
        if (err.code() != ErrorCode::NotSubBn) throw;
      }
    }
    CountOptions opt;
    opt.max_prime = 13;
    opt.compare_with_lattice = false;
    if (embedded_in_bn(a)) got.emplace_back("cube", charpoly_via_counts(a, CountMethod::cube, opt).chi);
    got.emplace_back("ffield", charpoly_via_counts(a, CountMethod::ffield, opt).chi);
    if (e.basis) {
      const FreeBasisReport r = saito_check(*e.basis, a);
      if (r.is_basis) got.emplace_back("saito", r.chi);
      else v.fail(e.label + ": supplied basis rejected (" + r.reason + ")");
    }
    if (got.size() < 2) v.fail(e.label + ": fewer than two methods");
    for (const auto& [m, chi] : got)
      if (chi != got.front().second) v.fail(e.label + ": " + m + " gives " + chi.to_string() + ", lattice " + got.front().second.to_string());
    ++objects;
    runs += got.size();
  }
  v.notes.push_back(std::to_string(objects) + " objects, " + std::to_string(runs) + " method runs");
  return v;
}

Verdict ten_element_golden() {
  Verdict v;
  const Lattice l(ten_element_lattice());
  auto id = [&](const std::string& s) { return *l.poset().find_label(s); };
  const std::vector<std::pair<std::string, int>> mu{{"0", 1}, {"a", -1}, {"b", -1}, {"c", -1}, {"d", -1},
                                                    {"s", 2}, {"t", 1},  {"u", 1},  {"v", 1},  {"1", -2}};
  const AtomOrder order = AtomOrder::total(l, l.atoms());
  const auto via_nbc = mobius_via_nbc(l, order);
  for (const auto& [x, value] : mu) {
    v.expect(l.poset().mobius(l.zero(), id(x)) == value, "mu(" + x + ")");
    v.expect(via_nbc[id(x)] == value, "nbc mu(" + x + ")");
  }
  const NbcResult nbc = circuits_and_nbc(l, order);
  auto labels = [&](AtomMask m) {
    std::string s;
    for (ElementId a : atoms_of(nbc.atoms, m)) s += l.label(a);
    return s;
  };
  auto bases = [&](const std::string& x) {
    std::vector<std::string> out;
    for (AtomMask m : nbc.bases[id(x)]) out.push_back(labels(m));
    std::sort(out.begin(), out.end());
    return out;
  };
  using L = std::vector<std::string>;
  const std::vector<std::pair<std::string, L>> expected{
      {"0", {""}},         {"a", {"a"}},        {"b", {"b"}},        {"c", {"c"}},        {"d", {"d"}},
      {"s", {"ab", "ac"}}, {"t", {"ad"}},       {"u", {"bd"}},       {"v", {"cd"}},       {"1", {"abd", "acd"}}};
  for (const auto& [x, want] : expected) v.expect(bases(x) == want, "NBC bases of " + x);
  return v;
}

Verdict region_counts_criterion() {
  Verdict v;
  for (unsigned n = 1; n <= 4; ++n) {
    const struct {
      std::string label;
      WeylKind kind;
      BigInt r, b;
    } rows[] = {{"A", WeylKind::A, factorial(n + 1), factorial(n)},
                {"B", WeylKind::B, pow2(n) * factorial(n), pow2(n) * factorial(n)},
                {"D", WeylKind::D, pow2(n - 1) * factorial(n), pow2(n - 1) * factorial(n)}};
    for (const auto& row : rows) {
      const RegionCounts rc = region_counts(weyl_arrangement(row.kind, n));
      v.expect(rc.regions == row.r, "r(" + row.label + std::to_string(n) + ") = " + rc.regions.str() + ", expected " + row.r.str());
      v.expect(rc.bounded == row.b, "b(" + row.label + std::to_string(n) + ") = " + rc.bounded.str() + ", expected " + row.b.str());
    }
  }
  for (unsigned n = 1; n <= 3; ++n) {
    const Arrangement s = shi_arrangement(n);
    const BigInt want = boost::multiprecision::pow(BigInt(n + 1), n - 1);
    const RegionCounts rc = region_counts(s);
    v.expect(rc.regions == want, "r(Shi" + std::to_string(n) + ") = " + rc.regions.str());
    std::vector<long long> r{0};
    for (unsigned i = 1; i < n; ++i) r.push_back(n);
    v.expect(charpoly_arrangement(s) == roots(r), "chi(Shi" + std::to_string(n) + ")");
  }
  return v;
}

// Set partitions of [n] into j blocks of size <= k, enumerated directly.
long long partitions_oracle(unsigned k, unsigned n, unsigned j) {
  std::vector<unsigned> sizes;
  long long count = 0;
  std::function<void(unsigned)> place = [&](unsigned e) {
    if (e == n) {
      count += sizes.size() == j;
      return;
    }
    for (std::size_t b = 0; b < sizes.size(); ++b)
      if (sizes[b] < k) {
        ++sizes[b];
        place(e + 1);
        --sizes[b];
      }
    sizes.push_back(1);
    place(e + 1);
    sizes.pop_back();
  };
  place(0);
  return count;
}

Verdict k_equal_criterion() {
  Verdict v;
  for (auto [n, k] : std::vector<std::pair<unsigned, unsigned>>{{4, 3}, {5, 3}, {5, 4}}) {
    const KEqualReport r = k_equal_charpoly(n, k);
    const std::string tag = name("kequal", n, k);
    v.expect(r.expansion.reconstruct() == charpoly_arrangement(k_equal_arrangement(n, k)), tag + " expansion vs lattice");
    const unsigned d = (n + k - 2) / (k - 1);
    v.expect(r.divisor_order == d, tag + " divisor order");
    std::optional<UniPoly> q = r.chi;
    for (unsigned i = 0; i < d && q; ++i) q = q->divide_by_linear(BigInt(i));
    v.expect(q.has_value() && r.divisible, tag + " not divisible by (t)_" + std::to_string(d));
  }
  for (unsigned n = 1; n <= 8; ++n)
    for (unsigned k = 1; k <= n; ++k)
      for (unsigned j = 0; j <= n; ++j)
        v.expect(bounded_stirling(k, n, j) == partitions_oracle(k, n, j), "S_" + std::to_string(k) + "(" + std::to_string(n) + "," + std::to_string(j) + ")");
  return v;
}

Verdict saito_criterion() {
  Verdict v;
  auto check = [&](const std::string& tag, const DerivationMatrix& basis, const Arrangement& a, std::vector<int> exps) {
    const FreeBasisReport r = saito_check(basis, a);
    std::sort(exps.begin(), exps.end());
    std::vector<int> got = r.exponents;
    std::sort(got.begin(), got.end());
    v.expect(r.is_basis, tag + " basis rejected: " + r.reason);
    v.expect(got == exps, tag + " exponents");
    v.expect(r.chi == charpoly_arrangement(a), tag + " chi");
  };
  for (unsigned n = 1; n <= 4; ++n) {
    std::vector<int> a(n), b(n), d;
    std::iota(a.begin(), a.end(), 0);
    for (unsigned i = 0; i < n; ++i) b[i] = 2 * static_cast<int>(i) + 1;
    for (unsigned i = 0; i + 1 < n; ++i) d.push_back(2 * static_cast<int>(i) + 1);
    check(name("A", n), family_basis(FreeFamily::A, n), weyl_arrangement(WeylKind::A, n), a);
    check(name("B", n), family_basis(FreeFamily::B, n), weyl_arrangement(WeylKind::B, n), b);
    auto dn = d;
    dn.push_back(static_cast<int>(n) - 1);
    check(name("D", n), family_basis(FreeFamily::D, n), weyl_arrangement(WeylKind::D, n), dn);
    for (unsigned k = 0; k <= n; ++k) {
      auto dbk = d;
      dbk.push_back(static_cast<int>(n + k) - 1);
      check(name("DB", n, k), family_basis(FreeFamily::DB, n, k), db_arrangement(n, k), dbk);
    }
  }
  return v;
}

Verdict deletion_restriction() {
  Verdict v;
  std::size_t checked = 0;
  for (const auto& e : corpus()) {
    if (!e.arrangement.is_hyperplane_arrangement()) continue;
    for (std::size_t h = 0; h < e.arrangement.size(); ++h, ++checked)
      v.expect(triple(e.arrangement, h).identity_holds(), e.label + " hyperplane " + std::to_string(h));
  }
  v.notes.push_back(std::to_string(checked) + " triples");
  return v;
}

Verdict combinatorial_criterion() {
  Verdict v;
  auto flats = [](const Arrangement& a) { return Lattice(intersection_poset(a).poset); };
  for (unsigned n = 1; n <= 4; ++n) {
    const StanleyReport pi = stanley_factorization(Lattice(partition_poset(n)));
    v.expect(pi.agrees && pi.product == roots(range(1, 1, n - 1)), "Pi_" + std::to_string(n));
    const StanleyReport b = stanley_factorization(flats(weyl_arrangement(WeylKind::B, n)));
    v.expect(b.agrees && b.product == roots(range(1, 2, n)), "L(B_" + std::to_string(n) + ")");
  }
  try {
    stanley_factorization(flats(weyl_arrangement(WeylKind::D, 4)));
    v.fail("L(D_4) factored");
  } catch (const Error& e) {
    v.expect(e.code() == ErrorCode::NotSupersolvable, std::string("L(D_4): ") + e.what());
  }

  std::mt19937_64 rng(8);
  std::vector<Lattice> lattices{Lattice(ten_element_lattice())};
  for (unsigned n = 2; n <= 4; ++n) {
    lattices.emplace_back(partition_poset(n));
    for (auto kind : {WeylKind::A, WeylKind::B, WeylKind::D}) lattices.push_back(flats(weyl_arrangement(kind, n)));
  }
  for (const Lattice& l : lattices) {
    const auto& mu = l.poset().mobius_from_zero();
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<ElementId> seq = l.atoms();
      std::shuffle(seq.begin(), seq.end(), rng);
      v.expect(mobius_via_nbc(l, AtomOrder::total(l, seq)) == mu, "NBC mu under a shuffled order");
    }
  }
  for (int trial = 0; trial < 200; ++trial) {
    const Lattice l = random_lattice(rng, 10);
    const AtomOrder o(l.atoms(), random_partial_order(rng, l.atoms().size()), AtomOrder::Kind::general);
    v.expect(nbb_machinery(l, o).mobius == l.poset().mobius_from_zero(), "NBB mu on random lattice " + std::to_string(trial));
  }
  return v;
}

PolyMatrix random_matrix(std::mt19937_64& rng, std::size_t size, std::size_t nvars) {
  std::uniform_int_distribution<int> coef(-3, 3), terms(0, 3), deg(0, 3);
  std::uniform_int_distribution<std::size_t> var(0, nvars - 1);
  PolyMatrix m(size, std::vector<MultiPoly>(size, MultiPoly(nvars)));
  for (auto& row : m)
    for (auto& e : row)
      for (int t = terms(rng); t > 0; --t) {
        Exponent x(nvars, 0);
        for (int d = deg(rng); d > 0; --d) ++x[var(rng)];
        e += MultiPoly::monomial(std::move(x), Rational(coef(rng)));
      }
  return m;
}

Verdict property_suites() {
  Verdict v;
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  for (int trial = 0; trial < 60; ++trial) {
    const Poset p = random_poset(rng, 10);
    std::vector<Rational> g(p.size());
    for (auto& x : g) x = Rational(num(rng), den(rng));
    for (auto dir : {InversionDirection::down, InversionDirection::up})
      v.expect(mobius_inversion(p, g, dir).g_recovered == g, "inversion round trip");
    v.expect(convolve(IncidenceFunction::zeta(p), IncidenceFunction::mobius(p)) == IncidenceFunction::delta(p), "zeta*mu");
    v.expect(convolve(IncidenceFunction::mobius(p), IncidenceFunction::zeta(p)) == IncidenceFunction::delta(p), "mu*zeta");
  }
  for (int trial = 0; trial < 30; ++trial) {
    const Poset p = random_poset(rng, 7), q = random_poset(rng, 7);
    const Poset pq = product(p, q);
    const std::size_t k = q.size();
    for (ElementId x = 0; x < p.size(); ++x)
      for (ElementId x2 = 0; x2 < p.size(); ++x2)
        for (ElementId y = 0; y < k; ++y)
          for (ElementId y2 = 0; y2 < k; ++y2)
            if (p.leq(x, x2) && q.leq(y, y2))
              v.expect(pq.mobius(x * k + y, x2 * k + y2) == p.mobius(x, x2) * q.mobius(y, y2), "product mu");
  }
  std::uniform_int_distribution<int> coef(-20, 20), degree(0, 10);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<BigInt> c(degree(rng) + 1);
    for (auto& x : c) x = coef(rng);
    const UniPoly p(std::move(c));
    v.expect(to_falling_factorial(p).reconstruct() == p, "falling factorial round trip");
  }
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t size = 2 + trial % 3, nvars = 1 + trial % 3;
    const PolyMatrix m = random_matrix(rng, size, nvars);
    v.expect(determinant_bareiss(m, nvars) == determinant_cofactor(m, nvars), "bareiss vs cofactor");
    v.expect(multi_determinant(m, nvars) == determinant_cofactor(m, nvars), "determinant vs cofactor");
  }
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"1 Weyl characteristic polynomials, n <= 5", weyl_table},
      {"2 method agreement on the corpus", method_agreement},
      {"3 ten-element lattice Mobius values and NBC bases", ten_element_golden},
      {"4 region and bounded-region counts", region_counts_criterion},
      {"5 k-equal expansion, bounded Stirling numbers, divisibility", k_equal_criterion},
      {"6 Saito certificates and exponents", saito_criterion},
      {"7 deletion-restriction on every corpus hyperplane", deletion_restriction},
      {"8 Stanley factorization, NBC and NBB Mobius", combinatorial_criterion},
      {"9 incidence algebra and polynomial properties", property_suites},
  };
  int failures = 0;
  for (const auto& [label, run] : criteria) {
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    failures += !v.ok;
    std::ostringstream line;
    line << (v.ok ? "PASS " : "FAIL ") << label;
    for (std::size_t i = 0; i < v.notes.size(); ++i) line << (i ? "; " : " -- ") << v.notes[i];
    std::cout << line.str() << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
