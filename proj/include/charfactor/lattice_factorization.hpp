#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "charfactor/lattice.hpp"
#include "charfactor/polynomial.hpp"

namespace charfactor {

using AtomMask = std::uint32_t;

inline constexpr std::size_t kMaxAtoms = 20;

/// Element ids of the atoms in mask, by atom position.
inline std::vector<ElementId> atoms_of(const std::vector<ElementId>& atoms, AtomMask mask) {
  std::vector<ElementId> out;
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if ((mask >> i) & 1u) out.push_back(atoms[i]);
  return out;
}

namespace detail {

/// join_of[mask] for every atom subset.
inline std::vector<std::uint32_t> subset_joins(const Lattice& l) {
  const std::size_t k = l.atoms().size();
  if (k > kMaxAtoms) fail(ErrorCode::SizeCap, "atom subset enumeration is capped at 20 atoms");
  std::vector<std::uint32_t> join(std::size_t{1} << k);
  join[0] = static_cast<std::uint32_t>(l.zero());
  for (AtomMask m = 1; m < join.size(); ++m) {
    const unsigned low = static_cast<unsigned>(std::countr_zero(m));
    join[m] = static_cast<std::uint32_t>(l.join(join[m & (m - 1)], l.atoms()[low]));
  }
  return join;
}

/// no_bad[mask]: neither mask nor any subset of it is marked bad.
inline std::vector<char> avoiding(const std::vector<char>& bad, std::size_t k) {
  std::vector<char> ok(bad.size(), 0);
  ok[0] = !bad[0];
  for (AtomMask m = 1; m < ok.size(); ++m) {
    bool good = !bad[m];
    for (std::size_t i = 0; i < k && good; ++i)
      if ((m >> i) & 1u) good = ok[m & ~(AtomMask{1} << i)] != 0;
    ok[m] = good;
  }
  return ok;
}

}  // namespace detail

struct NbcResult {
  std::vector<ElementId> atoms;                // atom positions
  std::vector<AtomMask> circuits;
  std::vector<AtomMask> broken_circuits;
  std::vector<std::vector<AtomMask>> bases;    // NBC bases per element
};

/// Circuits are the minimal atom sets with rank(join) < size. A broken circuit
/// drops the least atom of a circuit; NBC sets avoid every broken circuit.
inline NbcResult circuits_and_nbc(const Lattice& l, const AtomOrder& order) {
  if (!order.is_total()) fail(ErrorCode::InvalidArgument, "NBC bases need a total atom order");
  if (order.atoms() != l.atoms()) fail(ErrorCode::InvalidArgument, "atom order belongs to another lattice");
  if (!l.ranked() || !is_semimodular(l)) fail(ErrorCode::NotSemimodular, "NBC bases need a semimodular lattice");
  const std::size_t k = l.atoms().size();
  const auto join = detail::subset_joins(l);
  NbcResult r;
  r.atoms = l.atoms();
  r.bases.resize(l.size());
  std::vector<char> independent(join.size());
  for (AtomMask m = 0; m < join.size(); ++m)
    independent[m] = l.rank(join[m]) == static_cast<unsigned>(std::popcount(m));
  std::vector<char> broken(join.size(), 0);
  for (AtomMask m = 1; m < join.size(); ++m) {
    if (independent[m]) continue;
    bool minimal = true;
    for (std::size_t i = 0; i < k && minimal; ++i)
      if ((m >> i) & 1u) minimal = independent[m & ~(AtomMask{1} << i)] != 0;
    if (!minimal) continue;
    r.circuits.push_back(m);
    const AtomMask bc = m & ~(AtomMask{1} << order.least(m));
    r.broken_circuits.push_back(bc);
    broken[bc] = 1;
  }
  const auto nbc = detail::avoiding(broken, k);
  for (AtomMask m = 0; m < join.size(); ++m)
    if (nbc[m]) r.bases[join[m]].push_back(m);
  return r;
}

/// mu(bottom, x) = (-1)^rank(x) times the number of NBC bases of x.
inline std::vector<BigInt> mobius_via_nbc(const Lattice& l, const AtomOrder& order) {
  const NbcResult r = circuits_and_nbc(l, order);
  std::vector<BigInt> mu(l.size());
  for (ElementId x = 0; x < l.size(); ++x) {
    mu[x] = static_cast<long long>(r.bases[x].size());
    if (l.rank(x) % 2 == 1) mu[x] = -mu[x];
  }
  return mu;
}

struct NbbResult {
  std::vector<ElementId> atoms;
  std::vector<AtomMask> bounded_below;
  std::vector<std::vector<AtomMask>> bases;  // NBB bases per element
  std::vector<BigInt> mobius;                // sum of (-1)^|B| over the bases
};

/// D is bounded below when every d in D has an atom a before d with a < join(D).
/// NBB sets contain no bounded-below subset.
inline NbbResult nbb_machinery(const Lattice& l, const AtomOrder& order) {
  if (order.atoms() != l.atoms()) fail(ErrorCode::InvalidArgument, "atom order belongs to another lattice");
  const std::size_t k = l.atoms().size();
  const auto join = detail::subset_joins(l);
  std::vector<AtomMask> before(k, 0);
  for (std::size_t d = 0; d < k; ++d)
    for (std::size_t a = 0; a < k; ++a)
      if (order.precedes(a, d)) before[d] |= AtomMask{1} << a;
  // atoms strictly below each element
  std::vector<AtomMask> under(l.size(), 0);
  for (ElementId x = 0; x < l.size(); ++x)
    for (std::size_t a = 0; a < k; ++a)
      if (l.atoms()[a] != x && l.leq(l.atoms()[a], x)) under[x] |= AtomMask{1} << a;

  NbbResult r;
  r.atoms = l.atoms();
  r.bases.resize(l.size());
  r.mobius.assign(l.size(), BigInt(0));
  std::vector<char> bb(join.size(), 0);
  for (AtomMask m = 1; m < join.size(); ++m) {
    const AtomMask below_join = under[join[m]];
    bool all = true;
    for (std::size_t d = 0; d < k && all; ++d)
      if ((m >> d) & 1u) all = (before[d] & below_join) != 0;
    if (all) {
      bb[m] = 1;
      r.bounded_below.push_back(m);
    }
  }
  const auto nbb = detail::avoiding(bb, k);
  for (AtomMask m = 0; m < join.size(); ++m) {
    if (!nbb[m]) continue;
    r.bases[join[m]].push_back(m);
    r.mobius[join[m]] += std::popcount(m) % 2 == 0 ? 1 : -1;
  }
  return r;
}

/// prod (t - |A_i|)
inline UniPoly level_product(const Levels& lv) {
  UniPoly p = UniPoly::constant(1);
  for (const auto& b : lv.blocks) p *= UniPoly::linear(BigInt(b.size()));
  return p;
}

inline std::vector<BigInt> level_sizes(const Levels& lv) {
  std::vector<BigInt> s;
  for (const auto& b : lv.blocks) s.emplace_back(b.size());
  std::sort(s.begin(), s.end());
  return s;
}

struct StanleyReport {
  Levels levels;
  UniPoly chi;                       // sum mu(x) t^{rank(top) - rank(x)}
  UniPoly product;                   // prod (t - |A_i|)
  FactorizationReport factorization;
  bool agrees = false;               // chi == product
  bool nbc_are_level_transversals = false;
  bool rank_counts_match = false;    // NBC count at rank r equals e_r(|A_1|, ..)
};

namespace detail {

/// Largest number of atoms under a rank-2 element.
inline std::size_t max_atoms_under_rank_two(const Lattice& l) {
  std::size_t best = 0;
  for (ElementId x = 0; x < l.size(); ++x) {
    if (l.rank(x) != 2) continue;
    std::size_t c = 0;
    for (ElementId a : l.atoms()) c += l.leq(a, x) ? 1 : 0;
    best = std::max(best, c);
  }
  return best;
}

/// Checks that the NBC sets are exactly the atom sets meeting each level at most once.
inline bool transversal_check(const Lattice& l, const Levels& lv, const std::vector<std::vector<AtomMask>>& bases) {
  const auto level = level_of_atoms(l, lv);
  std::size_t total = 0;
  for (const auto& per : bases) {
    for (AtomMask m : per) {
      std::vector<char> seen(lv.blocks.size(), 0);
      for (std::size_t i = 0; i < level.size(); ++i)
        if ((m >> i) & 1u) {
          if (seen[level[i]]) return false;
          seen[level[i]] = 1;
        }
    }
    total += per.size();
  }
  BigInt expected = 1;
  for (const auto& b : lv.blocks) expected *= b.size() + 1;
  return BigInt(total) == expected;
}

/// e_r of the level sizes, for r = 0..n.
inline std::vector<BigInt> elementary_symmetric(const Levels& lv) {
  std::vector<BigInt> e{1};
  for (const auto& b : lv.blocks) {
    e.push_back(0);
    for (std::size_t r = e.size() - 1; r > 0; --r) e[r] += e[r - 1] * b.size();
  }
  return e;
}

}  // namespace detail

/// Supersolvable semimodular lattices: chi factors over the level sizes of a
/// modular maximal chain.
inline StanleyReport stanley_factorization(const Lattice& l, std::size_t max_nodes = kDefaultChainSearchNodes) {
  if (!l.ranked() || !is_semimodular(l)) fail(ErrorCode::NotSemimodular, "lattice is not semimodular");
  const auto chain = supersolvable_chain(l, max_nodes);
  if (!chain) {
    std::string msg = "no maximal chain of modular elements";
    if (l.rank(l.one()) >= 2)
      msg += "; the most atoms covered by a rank-2 element is " + std::to_string(detail::max_atoms_under_rank_two(l));
    fail(ErrorCode::NotSupersolvable, msg);
  }
  StanleyReport r;
  r.levels = levels(l, *chain);
  r.chi = characteristic_polynomial(l.poset());
  r.product = level_product(r.levels);
  r.factorization = nonneg_integer_roots(r.chi);
  r.agrees = r.chi == r.product;
  const NbcResult nbc = circuits_and_nbc(l, induced_total_order(l, r.levels));
  r.nbc_are_level_transversals = detail::transversal_check(l, r.levels, nbc.bases);
  std::vector<BigInt> by_rank(r.levels.blocks.size() + 1, BigInt(0));
  for (ElementId x = 0; x < l.size(); ++x) by_rank[l.rank(x)] += nbc.bases[x].size();
  r.rank_counts_match = by_rank == detail::elementary_symmetric(r.levels);
  return r;
}

/// Atoms b0 < b1 < .. < bk (strictly increasing levels) with b0 below the join
/// of b1..bk; nullopt when the level condition holds.
inline std::optional<std::vector<ElementId>> level_condition_witness(const Lattice& l, const Levels& lv) {
  const auto level = detail::level_of_atoms(l, lv);
  const auto& atoms = l.atoms();
  std::vector<std::size_t> seq;
  std::optional<std::vector<ElementId>> found;
  auto rec = [&](auto&& self, std::size_t b0, ElementId joined, std::size_t last_level) -> void {
    if (found) return;
    for (std::size_t i = 0; i < atoms.size() && !found; ++i) {
      if (level[i] <= last_level) continue;
      const ElementId j = seq.size() == 1 ? atoms[i] : l.join(joined, atoms[i]);
      seq.push_back(i);
      if (l.leq(atoms[b0], j)) {
        found.emplace();
        for (std::size_t p : seq) found->push_back(atoms[p]);
      } else {
        self(self, b0, j, level[i]);
      }
      seq.pop_back();
    }
  };
  for (std::size_t b0 = 0; b0 < atoms.size() && !found; ++b0) {
    seq = {b0};
    rec(rec, b0, l.zero(), level[b0]);
  }
  return found;
}

struct LLReport {
  Levels levels;
  AtomOrder order;                           // induced partial order
  std::vector<std::optional<unsigned>> rho;  // common NBB base size; empty without bases
  bool rho_consistent = false;
  std::vector<BigInt> mobius;
  UniPoly chi;                               // sum mu(x) t^{rho(top) - rho(x)}
  UniPoly product;                           // prod (t - |A_i|)
  FactorizationReport factorization;         // of product
  bool holds = false;                        // chi == product
  bool nbb_are_level_transversals = false;
  std::vector<std::size_t> empty_levels;     // 1-based
};

/// Left-modular maximal chain plus the level condition: the NBB bases under the
/// induced order are the level transversals and chi is compared with the level
/// product.
inline LLReport ll_factorization(const Lattice& l, std::size_t max_nodes = kDefaultChainSearchNodes) {
  const auto chain = left_modular_chain(l, max_nodes);
  if (!chain) fail(ErrorCode::NoLeftModularChain, "no maximal chain of left-modular elements");
  LLReport r;
  r.levels = levels(l, *chain);
  if (auto w = level_condition_witness(l, r.levels)) {
    std::string msg = "level condition fails for the atom chain";
    for (ElementId a : *w) msg += " " + l.label(a);
    fail(ErrorCode::LevelConditionFails, msg);
  }
  r.order = induced_partial_order(l, r.levels);
  const NbbResult nbb = nbb_machinery(l, r.order);
  r.mobius = nbb.mobius;
  r.rho.assign(l.size(), std::nullopt);
  r.rho_consistent = true;
  for (ElementId x = 0; x < l.size(); ++x)
    for (AtomMask m : nbb.bases[x]) {
      const auto c = static_cast<unsigned>(std::popcount(m));
      if (r.rho[x] && *r.rho[x] != c) r.rho_consistent = false;
      if (!r.rho[x]) r.rho[x] = c;
    }
  for (std::size_t i = 0; i < r.levels.blocks.size(); ++i)
    if (r.levels.blocks[i].empty()) r.empty_levels.push_back(i + 1);
  r.product = level_product(r.levels);
  r.factorization = nonneg_integer_roots(r.product);
  r.nbb_are_level_transversals = detail::transversal_check(l, r.levels, nbb.bases);
  if (r.rho_consistent && r.rho[l.one()]) {
    const unsigned top = *r.rho[l.one()];
    std::vector<BigInt> coeffs(top + 1, BigInt(0));
    for (ElementId x = 0; x < l.size(); ++x) {
      if (r.mobius[x] == 0) continue;
      if (!r.rho[x] || *r.rho[x] > top) {
        r.rho_consistent = false;
        break;
      }
      coeffs[top - *r.rho[x]] += r.mobius[x];
    }
    if (r.rho_consistent) r.chi = UniPoly(std::move(coeffs));
  }
  r.holds = r.rho_consistent && r.chi == r.product;
  return r;
}

}  // namespace charfactor
