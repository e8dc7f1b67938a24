#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "charfactor/numeric.hpp"
#include "charfactor/polynomial.hpp"

namespace charfactor {

using ElementId = std::size_t;
using Bitset = boost::dynamic_bitset<>;

/// child < parent with nothing in between.
struct Cover {
  ElementId child;
  ElementId parent;
  friend bool operator==(const Cover&, const Cover&) = default;
  friend auto operator<=>(const Cover&, const Cover&) = default;
};

/// The order relation is kept as a dense bit matrix, so posets are capped.
inline constexpr std::size_t kMaxPosetSize = 20'000;

/// Immutable finite poset on elements 0..size-1. Copies share storage, and
/// identity (same_as) is storage identity.
class Poset {
 public:
  Poset() : Poset(from_covers(1, {})) {}

  /// Builds the reflexive-transitive closure of the given relation pairs.
  /// Redundant (non-cover) pairs are accepted and dropped from covers().
  static Poset from_covers(std::size_t size, std::span<const Cover> relations, std::vector<std::string> labels = {}) {
    if (size == 0) fail(ErrorCode::ParameterOutOfRange, "posets must have at least one element");
    if (size > kMaxPosetSize)
      fail(ErrorCode::SizeCap, "poset with " + std::to_string(size) + " elements exceeds cap " +
                                   std::to_string(kMaxPosetSize));
    if (!labels.empty() && labels.size() != size) fail(ErrorCode::SizeMismatch, "label count differs from size");
    std::vector<std::vector<ElementId>> children(size);
    std::vector<std::size_t> indegree(size, 0);
    for (const auto& c : relations) {
      if (c.child >= size || c.parent >= size)
        fail(ErrorCode::IndexOutOfRange, "cover (" + std::to_string(c.child) + "," + std::to_string(c.parent) + ")");
      if (c.child == c.parent) fail(ErrorCode::CycleDetected, "self-loop at " + std::to_string(c.child));
      children[c.parent].push_back(c.child);
    }
    std::vector<std::vector<ElementId>> parents(size);
    for (ElementId p = 0; p < size; ++p)
      for (ElementId c : children[p]) {
        parents[c].push_back(p);
        ++indegree[p];
      }
    // Kahn's algorithm from the minimal elements upward.
    std::vector<ElementId> topo;
    topo.reserve(size);
    std::queue<ElementId> ready;
    for (ElementId x = 0; x < size; ++x)
      if (indegree[x] == 0) ready.push(x);
    while (!ready.empty()) {
      const ElementId x = ready.front();
      ready.pop();
      topo.push_back(x);
      for (ElementId p : parents[x])
        if (--indegree[p] == 0) ready.push(p);
    }
    if (topo.size() != size) fail(ErrorCode::CycleDetected, "cover relation contains a directed cycle");

    auto data = std::make_shared<Data>();
    data->size = size;
    data->labels = std::move(labels);
    data->down.assign(size, Bitset(size));
    for (ElementId x : topo) {
      data->down[x].set(x);
      for (ElementId c : children[x]) data->down[x] |= data->down[c];
    }
    finish(*data, std::move(topo));
    return Poset(std::move(data));
  }

  /// Builds a poset from a relation predicate leq(x, y); validates the axioms.
  static Poset from_relation(std::size_t size, const std::function<bool(ElementId, ElementId)>& leq,
                             std::vector<std::string> labels = {}) {
    if (size == 0) fail(ErrorCode::ParameterOutOfRange, "posets must have at least one element");
    if (size > kMaxPosetSize) fail(ErrorCode::SizeCap, "poset exceeds cap");
    if (!labels.empty() && labels.size() != size) fail(ErrorCode::SizeMismatch, "label count differs from size");
    auto data = std::make_shared<Data>();
    data->size = size;
    data->labels = std::move(labels);
    data->down.assign(size, Bitset(size));
    for (ElementId y = 0; y < size; ++y)
      for (ElementId x = 0; x < size; ++x)
        if (leq(x, y)) data->down[y].set(x);
    for (ElementId x = 0; x < size; ++x) {
      if (!data->down[x].test(x)) fail(ErrorCode::InvalidArgument, "relation is not reflexive");
      for (ElementId y = data->down[x].find_first(); y != Bitset::npos; y = data->down[x].find_next(y)) {
        if (y != x && data->down[y].test(x)) fail(ErrorCode::CycleDetected, "relation is not antisymmetric");
        if (!data->down[y].is_subset_of(data->down[x])) fail(ErrorCode::InvalidArgument, "relation is not transitive");
      }
    }
    std::vector<ElementId> order(size);
    std::iota(order.begin(), order.end(), ElementId{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](ElementId a, ElementId b) { return data->down[a].count() < data->down[b].count(); });
    finish(*data, std::move(order));
    return Poset(std::move(data));
  }

  std::size_t size() const { return d_->size; }
  bool leq(ElementId x, ElementId y) const { return d_->down[y].test(x); }
  bool less(ElementId x, ElementId y) const { return x != y && leq(x, y); }
  bool comparable(ElementId x, ElementId y) const { return leq(x, y) || leq(y, x); }

  const Bitset& down_set(ElementId x) const { return d_->down[x]; }
  const Bitset& up_set(ElementId x) const { return d_->up[x]; }
  const std::vector<Cover>& covers() const { return d_->covers; }
  const std::vector<ElementId>& upper_covers(ElementId x) const { return d_->upper[x]; }
  const std::vector<ElementId>& lower_covers(ElementId x) const { return d_->lower[x]; }
  bool covers_pair(ElementId lower, ElementId upper) const {
    const auto& u = d_->upper[lower];
    return std::find(u.begin(), u.end(), upper) != u.end();
  }

  /// Elements listed so that x < y implies x appears first.
  const std::vector<ElementId>& linear_extension() const { return d_->topo; }

  std::optional<ElementId> zero() const { return d_->zero; }
  std::optional<ElementId> one() const { return d_->one; }

  bool has_labels() const { return !d_->labels.empty(); }
  const std::vector<std::string>& labels() const { return d_->labels; }
  std::string label(ElementId x) const { return d_->labels.empty() ? std::to_string(x) : d_->labels[x]; }

  std::optional<ElementId> find_label(const std::string& l) const {
    for (ElementId x = 0; x < size(); ++x)
      if (label(x) == l) return x;
    return std::nullopt;
  }

  bool same_as(const Poset& o) const { return d_ == o.d_; }

  /// mu(x, y); rows are memoized on the shared storage.
  BigInt mobius(ElementId x, ElementId y) const {
    check_index(x);
    check_index(y);
    if (!leq(x, y)) fail(ErrorCode::NotComparable, "mobius(" + label(x) + ", " + label(y) + ") with x not <= y");
    return mobius_row(x)[y];
  }

  /// mu(x, y) for all y (zero where x is not below y).
  const std::vector<BigInt>& mobius_row(ElementId x) const {
    check_index(x);
    auto& cache = *d_->mobius_cache;
    {
      std::lock_guard lock(cache.mutex);
      if (cache.rows[x]) return *cache.rows[x];
    }
    auto row = std::make_unique<std::vector<BigInt>>(size(), BigInt(0));
    const Bitset& above = up_set(x);
    for (ElementId y : linear_extension()) {
      if (!above.test(y)) continue;
      if (y == x) {
        (*row)[y] = 1;
        continue;
      }
      BigInt acc = 0;
      const Bitset between = above & down_set(y);
      for (ElementId z = between.find_first(); z != Bitset::npos; z = between.find_next(z))
        if (z != y) acc += (*row)[z];
      (*row)[y] = -acc;
    }
    std::lock_guard lock(cache.mutex);
    if (!cache.rows[x]) cache.rows[x] = std::move(row);
    return *cache.rows[x];
  }

  /// mu(0, x) for all x.
  const std::vector<BigInt>& mobius_from_zero() const {
    if (!zero()) fail(ErrorCode::NoZero, "poset has no unique minimum");
    return mobius_row(*zero());
  }

  void check_index(ElementId x) const {
    if (x >= size()) fail(ErrorCode::IndexOutOfRange, "element " + std::to_string(x));
  }

 private:
  struct MobiusCache {
    std::mutex mutex;
    std::vector<std::unique_ptr<std::vector<BigInt>>> rows;
  };

  struct Data {
    std::size_t size = 0;
    std::vector<Bitset> down, up;
    std::vector<Cover> covers;
    std::vector<std::vector<ElementId>> upper, lower;
    std::vector<ElementId> topo;
    std::optional<ElementId> zero, one;
    std::vector<std::string> labels;
    std::unique_ptr<MobiusCache> mobius_cache;
  };

  explicit Poset(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

  static void finish(Data& d, std::vector<ElementId> topo) {
    const std::size_t n = d.size;
    d.topo = std::move(topo);
    d.up.assign(n, Bitset(n));
    for (ElementId y = 0; y < n; ++y)
      for (ElementId x = d.down[y].find_first(); x != Bitset::npos; x = d.down[y].find_next(x)) d.up[x].set(y);
    d.upper.assign(n, {});
    d.lower.assign(n, {});
    for (ElementId x = 0; x < n; ++x)
      for (ElementId y = d.up[x].find_first(); y != Bitset::npos; y = d.up[x].find_next(y)) {
        if (y == x) continue;
        if ((d.up[x] & d.down[y]).count() == 2) {
          d.covers.push_back({x, y});
          d.upper[x].push_back(y);
          d.lower[y].push_back(x);
        }
      }
    for (ElementId x = 0; x < n; ++x) {
      if (d.up[x].count() == n) d.zero = x;
      if (d.down[x].count() == n) d.one = x;
    }
    d.mobius_cache = std::make_unique<MobiusCache>();
    d.mobius_cache->rows.resize(n);
  }

  std::shared_ptr<const Data> d_;
};

struct RankInfo {
  bool ranked = false;
  std::vector<unsigned> rho;  // empty unless ranked
};

/// Ranked iff every cover raises the longest-chain length from 0 by exactly one.
inline RankInfo rank_info(const Poset& p) {
  if (!p.zero()) fail(ErrorCode::NoZero, "rank requires a unique minimum");
  std::vector<unsigned> longest(p.size(), 0);
  for (ElementId x : p.linear_extension())
    for (ElementId y : p.upper_covers(x)) longest[y] = std::max(longest[y], longest[x] + 1);
  RankInfo info;
  for (const auto& c : p.covers())
    if (longest[c.parent] != longest[c.child] + 1) return info;
  info.ranked = true;
  info.rho = std::move(longest);
  return info;
}

/// sum_x mu(x) t^{rho(1) - rho(x)} for a ranked poset with 0 and 1.
inline UniPoly characteristic_polynomial(const Poset& p) {
  const RankInfo ri = rank_info(p);
  if (!ri.ranked) fail(ErrorCode::InvalidArgument, "characteristic polynomial needs a ranked poset");
  if (!p.one()) fail(ErrorCode::InvalidArgument, "characteristic polynomial needs a unique maximum");
  const unsigned top = ri.rho[*p.one()];
  const auto& mu = p.mobius_from_zero();
  std::vector<BigInt> coeffs(top + 1, BigInt(0));
  for (ElementId x = 0; x < p.size(); ++x) coeffs[top - ri.rho[x]] += mu[x];
  return UniPoly(std::move(coeffs));
}

/// Componentwise order on pairs; element (x, y) has index x * |Q| + y.
inline Poset product(const Poset& p, const Poset& q) {
  const std::size_t m = p.size(), k = q.size();
  if (m * k > kMaxPosetSize) fail(ErrorCode::SizeCap, "product poset exceeds cap");
  std::vector<Cover> covers;
  for (const auto& c : p.covers())
    for (ElementId y = 0; y < k; ++y) covers.push_back({c.child * k + y, c.parent * k + y});
  for (const auto& c : q.covers())
    for (ElementId x = 0; x < m; ++x) covers.push_back({x * k + c.child, x * k + c.parent});
  std::vector<std::string> labels;
  if (p.has_labels() || q.has_labels()) {
    labels.reserve(m * k);
    for (ElementId x = 0; x < m; ++x)
      for (ElementId y = 0; y < k; ++y) labels.push_back("(" + p.label(x) + "," + q.label(y) + ")");
  }
  return Poset::from_covers(m * k, covers, std::move(labels));
}

inline constexpr std::size_t kMaxIsomorphismSize = 12;

/// Backtracking search for an order isomorphism; exponential, so capped at 12 elements.
inline std::optional<std::vector<ElementId>> find_isomorphism(const Poset& p, const Poset& q) {
  if (p.size() != q.size() || p.covers().size() != q.covers().size()) return std::nullopt;
  const std::size_t n = p.size();
  if (n > kMaxIsomorphismSize)
    fail(ErrorCode::ParameterOutOfRange, "isomorphism search is limited to " + std::to_string(kMaxIsomorphismSize) +
                                             " elements");
  auto signature = [](const Poset& s, ElementId x) {
    return std::pair{s.down_set(x).count(), s.up_set(x).count()};
  };
  std::vector<ElementId> order = p.linear_extension();
  std::vector<ElementId> image(n, n);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> extend = [&](std::size_t depth) {
    if (depth == n) return true;
    const ElementId x = order[depth];
    for (ElementId y = 0; y < n; ++y) {
      if (used[y] || signature(p, x) != signature(q, y)) continue;
      bool ok = true;
      for (std::size_t i = 0; i < depth && ok; ++i) {
        const ElementId a = order[i];
        ok = p.leq(a, x) == q.leq(image[a], y) && p.leq(x, a) == q.leq(y, image[a]);
      }
      if (!ok) continue;
      image[x] = y;
      used[y] = true;
      if (extend(depth + 1)) return true;
      used[y] = false;
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;
  return image;
}

inline bool isomorphic(const Poset& p, const Poset& q) { return find_isomorphism(p, q).has_value(); }

// ---------------------------------------------------------------------------
// Standard example posets

enum class StandardKind { chain, boolean, divisor, partition };

inline constexpr std::size_t kMaxStandardSize = 20'000;

inline Poset chain_poset(unsigned n) {
  if (n + 1 > kMaxStandardSize) fail(ErrorCode::ParameterOutOfRange, "chain too long");
  std::vector<Cover> covers;
  std::vector<std::string> labels;
  for (unsigned i = 0; i <= n; ++i) {
    labels.push_back(std::to_string(i));
    if (i > 0) covers.push_back({i - 1, i});
  }
  return Poset::from_covers(n + 1, covers, std::move(labels));
}

/// Subsets of [n] under inclusion; element index is the subset bitmask.
inline Poset boolean_poset(unsigned n) {
  if (n > 14) fail(ErrorCode::ParameterOutOfRange, "B_n element count exceeds cap");
  const std::size_t m = std::size_t{1} << n;
  std::vector<Cover> covers;
  std::vector<std::string> labels(m);
  for (std::size_t s = 0; s < m; ++s) {
    std::string l = "{";
    bool first = true;
    for (unsigned i = 0; i < n; ++i) {
      if (!(s >> i & 1)) {
        covers.push_back({s, s | (std::size_t{1} << i)});
        continue;
      }
      if (!first) l += ",";
      l += std::to_string(i + 1);
      first = false;
    }
    labels[s] = l + "}";
  }
  return Poset::from_covers(m, covers, std::move(labels));
}

/// Divisors of n (ascending) under divisibility.
inline Poset divisor_poset(std::uint64_t n) {
  if (n < 1) fail(ErrorCode::ParameterOutOfRange, "divisor poset needs n >= 1");
  std::vector<std::uint64_t> divs;
  for (std::uint64_t d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      divs.push_back(d);
      if (d != n / d) divs.push_back(n / d);
    }
  std::sort(divs.begin(), divs.end());
  if (divs.size() > kMaxStandardSize) fail(ErrorCode::ParameterOutOfRange, "too many divisors");
  std::vector<Cover> covers;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < divs.size(); ++i) {
    labels.push_back(std::to_string(divs[i]));
    for (std::size_t j = i + 1; j < divs.size(); ++j)
      if (divs[j] % divs[i] == 0 && is_prime(divs[j] / divs[i])) covers.push_back({i, j});
  }
  return Poset::from_covers(divs.size(), covers, std::move(labels));
}

namespace detail {

/// Set partitions of [n] as restricted growth strings, in lexicographic order.
inline std::vector<std::vector<unsigned>> restricted_growth_strings(unsigned n) {
  std::vector<std::vector<unsigned>> out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<unsigned> a(n, 0);
  std::function<void(unsigned, unsigned)> rec = [&](unsigned i, unsigned max_block) {
    if (i == n) {
      out.push_back(a);
      return;
    }
    for (unsigned b = 0; b <= max_block + 1; ++b) {
      a[i] = b;
      rec(i + 1, std::max(max_block, b));
    }
  };
  a[0] = 0;
  rec(1, 0);
  return out;
}

inline std::string partition_label(const std::vector<unsigned>& rgs) {
  unsigned blocks = 0;
  for (unsigned b : rgs) blocks = std::max(blocks, b + 1);
  std::string out;
  for (unsigned b = 0; b < blocks; ++b) {
    out += "{";
    bool first = true;
    for (std::size_t i = 0; i < rgs.size(); ++i)
      if (rgs[i] == b) {
        if (!first) out += ",";
        out += std::to_string(i + 1);
        first = false;
      }
    out += "}";
  }
  return out;
}

}  // namespace detail

/// Set partitions of [n] ordered by refinement (finest partition is the zero).
inline Poset partition_poset(unsigned n) {
  if (n < 1) fail(ErrorCode::ParameterOutOfRange, "partition poset needs n >= 1");
  if (n > 8) fail(ErrorCode::ParameterOutOfRange, "Pi_n element count exceeds cap for n > 8");
  const auto parts = detail::restricted_growth_strings(n);
  std::map<std::vector<unsigned>, ElementId> index;
  for (ElementId i = 0; i < parts.size(); ++i) index[parts[i]] = i;
  auto normalize = [](std::vector<unsigned> a) {
    std::vector<int> relabel(a.size(), -1);
    unsigned next = 0;
    for (auto& b : a) {
      if (relabel[b] < 0) relabel[b] = static_cast<int>(next++);
      b = static_cast<unsigned>(relabel[b]);
    }
    return a;
  };
  std::vector<Cover> covers;
  std::vector<std::string> labels;
  for (ElementId i = 0; i < parts.size(); ++i) {
    const auto& a = parts[i];
    labels.push_back(detail::partition_label(a));
    const unsigned blocks = *std::max_element(a.begin(), a.end()) + 1;
    for (unsigned b1 = 0; b1 < blocks; ++b1)
      for (unsigned b2 = b1 + 1; b2 < blocks; ++b2) {
        auto merged = a;
        for (auto& b : merged)
          if (b == b2) b = b1;
        covers.push_back({i, index.at(normalize(merged))});
      }
  }
  return Poset::from_covers(parts.size(), covers, std::move(labels));
}

inline Poset standard_poset(StandardKind kind, std::uint64_t n) {
  switch (kind) {
    case StandardKind::chain: return chain_poset(static_cast<unsigned>(n));
    case StandardKind::boolean: return boolean_poset(static_cast<unsigned>(n));
    case StandardKind::divisor: return divisor_poset(n);
    case StandardKind::partition: return partition_poset(static_cast<unsigned>(n));
  }
  fail(ErrorCode::InvalidArgument, "unknown standard poset kind");
}

}  // namespace charfactor
