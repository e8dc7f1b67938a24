#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "charfactor/poset.hpp"

namespace charfactor {

inline constexpr std::size_t kMaxLatticeSize = 2048;

/// A poset with all meets and joins, tabulated.
class Lattice {
 public:
  explicit Lattice(Poset p) : poset_(std::move(p)) {
    const std::size_t m = poset_.size();
    if (m > kMaxLatticeSize) fail(ErrorCode::SizeCap, "lattice tables are capped at 2048 elements");
    if (!poset_.zero() || !poset_.one()) fail(ErrorCode::NotLattice, "no bottom or no top element");
    std::vector<std::size_t> topo_pos(m);
    for (std::size_t i = 0; i < m; ++i) topo_pos[poset_.linear_extension()[i]] = i;
    join_.assign(m * m, 0);
    meet_.assign(m * m, 0);
    for (ElementId x = 0; x < m; ++x)
      for (ElementId y = x; y < m; ++y) {
        join_[x * m + y] = join_[y * m + x] = bound(poset_.up_set(x) & poset_.up_set(y), topo_pos, true, x, y);
        meet_[x * m + y] = meet_[y * m + x] = bound(poset_.down_set(x) & poset_.down_set(y), topo_pos, false, x, y);
      }
    atoms_ = poset_.upper_covers(*poset_.zero());
    std::sort(atoms_.begin(), atoms_.end());
    rank_ = rank_info(poset_);
  }

  const Poset& poset() const { return poset_; }
  std::size_t size() const { return poset_.size(); }
  ElementId zero() const { return *poset_.zero(); }
  ElementId one() const { return *poset_.one(); }
  bool leq(ElementId x, ElementId y) const { return poset_.leq(x, y); }

  ElementId join(ElementId x, ElementId y) const { return static_cast<ElementId>(join_[x * size() + y]); }
  ElementId meet(ElementId x, ElementId y) const { return static_cast<ElementId>(meet_[x * size() + y]); }

  /// Atoms in ascending element order.
  const std::vector<ElementId>& atoms() const { return atoms_; }

  bool ranked() const { return rank_.ranked; }
  unsigned rank(ElementId x) const {
    if (!rank_.ranked) fail(ErrorCode::InvalidArgument, "lattice is not ranked");
    return rank_.rho[x];
  }

  std::string label(ElementId x) const { return poset_.label(x); }

 private:
  ElementId bound(const Bitset& common, const std::vector<std::size_t>& topo_pos, bool upper, ElementId x, ElementId y) const {
    ElementId best = Bitset::npos;
    for (ElementId z = common.find_first(); z != Bitset::npos; z = common.find_next(z))
      if (best == Bitset::npos || (upper ? topo_pos[z] < topo_pos[best] : topo_pos[z] > topo_pos[best])) best = z;
    const bool ok = best != Bitset::npos &&
                    common.is_subset_of(upper ? poset_.up_set(best) : poset_.down_set(best));
    if (!ok)
      fail(ErrorCode::NotLattice, std::string(upper ? "no join" : "no meet") + " for " + poset_.label(x) + " and " + poset_.label(y));
    return best;
  }

  Poset poset_;
  std::vector<std::uint32_t> join_;
  std::vector<std::uint32_t> meet_;
  std::vector<ElementId> atoms_;
  RankInfo rank_;
};

/// Whenever x and y both cover x meet y, x join y covers both.
inline bool is_semimodular(const Lattice& l) {
  const Poset& p = l.poset();
  for (ElementId w = 0; w < l.size(); ++w) {
    const auto& up = p.upper_covers(w);
    for (std::size_t i = 0; i < up.size(); ++i)
      for (std::size_t j = i + 1; j < up.size(); ++j) {
        const ElementId top = l.join(up[i], up[j]);
        if (!p.covers_pair(up[i], top) || !p.covers_pair(up[j], top)) return false;
      }
  }
  return true;
}

/// xMz: y join (x meet z) == (y join x) meet z for every y <= z.
inline bool is_modular_pair(const Lattice& l, ElementId x, ElementId z) {
  l.poset().check_index(x);
  l.poset().check_index(z);
  const ElementId xz = l.meet(x, z);
  const Bitset& below = l.poset().down_set(z);
  for (ElementId y = below.find_first(); y != Bitset::npos; y = below.find_next(y))
    if (l.join(y, xz) != l.meet(l.join(y, x), z)) return false;
  return true;
}

inline bool is_left_modular(const Lattice& l, ElementId x) {
  for (ElementId z = 0; z < l.size(); ++z)
    if (!is_modular_pair(l, x, z)) return false;
  return true;
}

inline bool is_modular_element(const Lattice& l, ElementId x) {
  for (ElementId z = 0; z < l.size(); ++z)
    if (!is_modular_pair(l, x, z) || !is_modular_pair(l, z, x)) return false;
  return true;
}

inline bool is_modular_lattice(const Lattice& l) {
  for (ElementId x = 0; x < l.size(); ++x)
    if (!is_modular_element(l, x)) return false;
  return true;
}

inline constexpr std::size_t kDefaultChainSearchNodes = 100'000;

namespace detail {

/// DFS up the cover graph through elements accepted by the predicate.
template <class Accept>
std::optional<std::vector<ElementId>> find_maximal_chain(const Lattice& l, Accept&& accept, std::size_t max_nodes) {
  std::vector<ElementId> chain{l.zero()};
  std::vector<char> dead(l.size(), 0);
  std::size_t nodes = 0;
  auto rec = [&](auto&& self, ElementId x) -> bool {
    if (x == l.one()) return true;
    if (++nodes > max_nodes) fail(ErrorCode::BudgetExceeded, "chain search exceeded " + std::to_string(max_nodes) + " nodes");
    for (ElementId y : l.poset().upper_covers(x)) {
      if (dead[y] || !accept(y)) continue;
      chain.push_back(y);
      if (self(self, y)) return true;
      chain.pop_back();
      dead[y] = 1;
    }
    return false;
  };
  if (rec(rec, l.zero())) return chain;
  return std::nullopt;
}

}  // namespace detail

/// A maximal chain of modular elements, or none when the search space is exhausted.
inline std::optional<std::vector<ElementId>> supersolvable_chain(const Lattice& l, std::size_t max_nodes = kDefaultChainSearchNodes) {
  std::vector<signed char> cache(l.size(), -1);
  return detail::find_maximal_chain(
      l,
      [&](ElementId y) {
        if (cache[y] < 0) cache[y] = is_modular_element(l, y) ? 1 : 0;
        return cache[y] == 1;
      },
      max_nodes);
}

inline std::optional<std::vector<ElementId>> left_modular_chain(const Lattice& l, std::size_t max_nodes = kDefaultChainSearchNodes) {
  std::vector<signed char> cache(l.size(), -1);
  return detail::find_maximal_chain(
      l,
      [&](ElementId y) {
        if (cache[y] < 0) cache[y] = is_left_modular(l, y) ? 1 : 0;
        return cache[y] == 1;
      },
      max_nodes);
}

struct Levels {
  std::vector<ElementId> chain;
  std::vector<std::vector<ElementId>> blocks;  // blocks[i] is level i + 1
};

/// Level i holds the atoms below chain[i] and not below chain[i - 1].
inline Levels levels(const Lattice& l, const std::vector<ElementId>& chain) {
  if (chain.empty() || chain.front() != l.zero() || chain.back() != l.one())
    fail(ErrorCode::ChainNotMaximal, "chain must run from bottom to top");
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (!l.poset().covers_pair(chain[i], chain[i + 1]))
      fail(ErrorCode::ChainNotMaximal, l.label(chain[i + 1]) + " does not cover " + l.label(chain[i]));
  Levels lv;
  lv.chain = chain;
  lv.blocks.resize(chain.size() - 1);
  for (ElementId a : l.atoms())
    for (std::size_t i = 1; i < chain.size(); ++i)
      if (l.leq(a, chain[i])) {
        lv.blocks[i - 1].push_back(a);
        break;
      }
  return lv;
}

/// Strict partial order on the atoms of a lattice, by atom position.
class AtomOrder {
 public:
  enum class Kind { total, induced_total, induced_partial, general };

  AtomOrder() = default;

  /// precedes[i][j] means atom i comes strictly before atom j.
  AtomOrder(std::vector<ElementId> atoms, std::vector<std::vector<char>> precedes, Kind kind)
      : atoms_(std::move(atoms)), lt_(std::move(precedes)), kind_(kind) {
    const std::size_t k = atoms_.size();
    if (lt_.size() != k) fail(ErrorCode::SizeMismatch, "order matrix size differs from atom count");
    for (std::size_t i = 0; i < k; ++i) {
      if (lt_[i].size() != k) fail(ErrorCode::SizeMismatch, "order matrix is not square");
      if (lt_[i][i]) fail(ErrorCode::InvalidArgument, "atom order must be irreflexive");
    }
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        if (lt_[i][j] && lt_[j][i]) fail(ErrorCode::InvalidArgument, "atom order must be antisymmetric");
        if (!lt_[i][j]) continue;
        for (std::size_t m = 0; m < k; ++m)
          if (lt_[j][m] && !lt_[i][m]) fail(ErrorCode::InvalidArgument, "atom order must be transitive");
      }
    if (kind_ == Kind::total || kind_ == Kind::induced_total)
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
          if (!lt_[i][j] && !lt_[j][i]) fail(ErrorCode::InvalidArgument, "total atom order has incomparable atoms");
  }

  /// sequence lists the lattice atoms from least to greatest.
  static AtomOrder total(const Lattice& l, const std::vector<ElementId>& sequence, Kind kind = Kind::total) {
    const auto& atoms = l.atoms();
    if (sequence.size() != atoms.size() || !std::is_permutation(sequence.begin(), sequence.end(), atoms.begin()))
      fail(ErrorCode::InvalidArgument, "sequence must list every atom once");
    std::vector<std::size_t> rank(atoms.size());
    for (std::size_t r = 0; r < sequence.size(); ++r)
      rank[static_cast<std::size_t>(std::find(atoms.begin(), atoms.end(), sequence[r]) - atoms.begin())] = r;
    std::vector<std::vector<char>> lt(atoms.size(), std::vector<char>(atoms.size(), 0));
    for (std::size_t i = 0; i < atoms.size(); ++i)
      for (std::size_t j = 0; j < atoms.size(); ++j) lt[i][j] = rank[i] < rank[j];
    return AtomOrder(atoms, std::move(lt), kind);
  }

  static AtomOrder antichain(const Lattice& l) {
    const std::size_t k = l.atoms().size();
    return AtomOrder(l.atoms(), std::vector<std::vector<char>>(k, std::vector<char>(k, 0)), Kind::general);
  }

  const std::vector<ElementId>& atoms() const { return atoms_; }
  Kind kind() const { return kind_; }
  bool is_total() const { return kind_ == Kind::total || kind_ == Kind::induced_total; }
  bool precedes(std::size_t i, std::size_t j) const { return lt_[i][j] != 0; }

  /// Position of the least atom among the set bits of mask (total orders).
  std::size_t least(std::uint32_t mask) const {
    std::size_t best = atoms_.size();
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if ((mask >> i) & 1u)
        if (best == atoms_.size() || lt_[i][best]) best = i;
    return best;
  }

 private:
  std::vector<ElementId> atoms_;
  std::vector<std::vector<char>> lt_;
  Kind kind_ = Kind::general;
};

namespace detail {

inline std::vector<std::size_t> level_of_atoms(const Lattice& l, const Levels& lv) {
  std::vector<std::size_t> level(l.atoms().size(), 0);
  for (std::size_t b = 0; b < lv.blocks.size(); ++b)
    for (ElementId a : lv.blocks[b])
      level[static_cast<std::size_t>(std::find(l.atoms().begin(), l.atoms().end(), a) - l.atoms().begin())] = b;
  return level;
}

}  // namespace detail

/// Atoms sorted by level; within a level by ascending element index, or by
/// the supplied tiebreak rank (indexed by atom position) when given.
inline AtomOrder induced_total_order(const Lattice& l, const Levels& lv, const std::vector<std::size_t>& tiebreak = {}) {
  const auto level = detail::level_of_atoms(l, lv);
  std::vector<std::size_t> pos(l.atoms().size());
  for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = i;
  std::sort(pos.begin(), pos.end(), [&](std::size_t a, std::size_t b) {
    if (level[a] != level[b]) return level[a] < level[b];
    if (!tiebreak.empty()) return tiebreak[a] < tiebreak[b];
    return a < b;
  });
  std::vector<ElementId> seq;
  for (std::size_t p : pos) seq.push_back(l.atoms()[p]);
  return AtomOrder::total(l, seq, AtomOrder::Kind::induced_total);
}

/// a before b exactly when a sits in a lower level.
inline AtomOrder induced_partial_order(const Lattice& l, const Levels& lv) {
  const auto level = detail::level_of_atoms(l, lv);
  const std::size_t k = level.size();
  std::vector<std::vector<char>> lt(k, std::vector<char>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) lt[i][j] = level[i] < level[j];
  return AtomOrder(l.atoms(), std::move(lt), AtomOrder::Kind::induced_partial);
}

/// Random lattice from an intersection-closed family of subsets of a small
/// ground set (the full set included), ordered by inclusion.
inline Lattice random_lattice(std::mt19937_64& rng, std::size_t max_elements = 10) {
  std::uniform_int_distribution<unsigned> ground_dist(2, 4);
  while (true) {
    const unsigned g = ground_dist(rng);
    const unsigned full = (1u << g) - 1;
    std::uniform_int_distribution<unsigned> set_dist(0, full);
    std::uniform_int_distribution<unsigned> count_dist(1, 6);
    std::set<unsigned> family{full};
    for (unsigned i = 0, c = count_dist(rng); i < c; ++i) family.insert(set_dist(rng));
    bool grew = true;
    while (grew) {
      grew = false;
      const std::vector<unsigned> cur(family.begin(), family.end());
      for (unsigned a : cur)
        for (unsigned b : cur) grew |= family.insert(a & b).second;
    }
    if (family.size() > max_elements) continue;
    const std::vector<unsigned> sets(family.begin(), family.end());
    std::vector<std::string> labels;
    for (unsigned s : sets) {
      std::string lab = "{";
      for (unsigned i = 0; i < g; ++i)
        if ((s >> i) & 1u) lab += (lab.size() > 1 ? "," : "") + std::to_string(i + 1);
      labels.push_back(lab + "}");
    }
    Poset p = Poset::from_relation(
        sets.size(), [&](ElementId x, ElementId y) { return (sets[x] & ~sets[y]) == 0; }, std::move(labels));
    return Lattice(std::move(p));
  }
}

}  // namespace charfactor
