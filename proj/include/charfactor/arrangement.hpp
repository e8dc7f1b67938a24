#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "charfactor/linalg.hpp"
#include "charfactor/polynomial.hpp"
#include "charfactor/poset.hpp"

namespace charfactor {

/// Affine flat {x in Q^n : a.x = b for every row [a | b]}, stored as the
/// reduced row-echelon form of its augmented equation matrix. The form is
/// canonical, so equal flats compare equal structurally. Linear subspaces are
/// the flats whose offsets all vanish.
class Flat {
 public:
  Flat() = default;

  static Flat ambient(std::size_t n) { return Flat(n, {}); }

  /// nullopt when the system is inconsistent.
  static std::optional<Flat> from_equations(std::size_t n, RationalMatrix augmented) {
    for (const auto& row : augmented)
      if (row.size() != n + 1) fail(ErrorCode::DimensionMismatch, "equation row length must be ambient_dim + 1");
    RationalMatrix r = rref(std::move(augmented));
    for (const auto& row : r) {
      bool coefficient_free = true;
      for (std::size_t i = 0; i < n && coefficient_free; ++i) coefficient_free = row[i] == 0;
      if (coefficient_free) return std::nullopt;
    }
    return Flat(n, std::move(r));
  }

  /// Linear subspace cut out by homogeneous equations (rows of length n).
  static Flat linear(std::size_t n, const RationalMatrix& equations) {
    RationalMatrix aug;
    aug.reserve(equations.size());
    for (const auto& row : equations) {
      if (row.size() != n) fail(ErrorCode::DimensionMismatch, "equation row length must equal ambient_dim");
      RationalRow r = row;
      r.emplace_back(0);
      aug.push_back(std::move(r));
    }
    return *from_equations(n, std::move(aug));
  }

  static Flat hyperplane(const RationalRow& normal, const Rational& offset = 0) {
    if (std::all_of(normal.begin(), normal.end(), [](const Rational& q) { return q == 0; }))
      fail(ErrorCode::InvalidArgument, "hyperplane normal must be nonzero");
    RationalRow r = normal;
    r.push_back(offset);
    return *from_equations(normal.size(), RationalMatrix{std::move(r)});
  }

  std::size_t ambient_dim() const { return n_; }
  std::size_t codim() const { return rows_.size(); }
  std::size_t dim() const { return n_ - rows_.size(); }
  bool is_ambient() const { return rows_.empty(); }
  bool is_hyperplane() const { return rows_.size() == 1; }

  /// Augmented RREF rows [a | b].
  const RationalMatrix& equations() const { return rows_; }

  bool is_linear() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const RationalRow& r) { return r.back() == 0; });
  }

  /// Coefficient part of the single defining row (leading entry 1).
  RationalRow normal() const {
    if (!is_hyperplane()) fail(ErrorCode::NotHyperplanes, "normal() of a flat of codimension " + std::to_string(codim()));
    return RationalRow(rows_[0].begin(), rows_[0].end() - 1);
  }

  Rational offset() const {
    if (!is_hyperplane()) fail(ErrorCode::NotHyperplanes, "offset() of a non-hyperplane");
    return rows_[0].back();
  }

  /// Rows scaled to coprime integers (augmented, offset last).
  std::vector<std::vector<BigInt>> integer_equations() const {
    std::vector<std::vector<BigInt>> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(primitive_integer_row(r));
    return out;
  }

  /// Rows spanning the direction space {x : a.x = 0}.
  RationalMatrix direction_basis() const {
    RationalMatrix coeffs;
    for (const auto& r : rows_) coeffs.emplace_back(r.begin(), r.end() - 1);
    return nullspace_basis(coeffs, n_);
  }

  std::optional<Flat> intersect(const Flat& o) const {
    if (o.n_ != n_) fail(ErrorCode::DimensionMismatch, "flats in different ambient dimensions");
    RationalMatrix stacked = rows_;
    stacked.insert(stacked.end(), o.rows_.begin(), o.rows_.end());
    return from_equations(n_, std::move(stacked));
  }

  /// o is a subset of *this.
  bool contains(const Flat& o) const {
    if (o.n_ != n_) fail(ErrorCode::DimensionMismatch, "flats in different ambient dimensions");
    for (const auto& row : rows_)
      if (!o.implies(row)) return false;
    return true;
  }

  bool contains_point(std::span<const Rational> x) const {
    if (x.size() != n_) fail(ErrorCode::DimensionMismatch, "point has wrong length");
    for (const auto& r : rows_) {
      Rational acc = 0;
      for (std::size_t i = 0; i < n_; ++i) acc += r[i] * x[i];
      if (acc != r.back()) return false;
    }
    return true;
  }

  std::string key() const {
    std::string k = std::to_string(n_) + "|";
    for (const auto& r : rows_) {
      for (const auto& q : r) k += charfactor::to_string(q) + ",";
      k += ";";
    }
    return k;
  }

  /// "x1 - x2 = 0, x3 = 1"; the ambient space prints as "R^n".
  std::string to_string() const {
    if (rows_.empty()) return "R^" + std::to_string(n_);
    std::string out;
    for (const auto& row : integer_equations()) {
      if (!out.empty()) out += ", ";
      std::string lhs;
      for (std::size_t i = 0; i < n_; ++i) {
        if (row[i] == 0) continue;
        const bool neg = row[i] < 0;
        const BigInt mag = neg ? BigInt(-row[i]) : row[i];
        if (lhs.empty()) lhs += neg ? "-" : "";
        else lhs += neg ? " - " : " + ";
        if (mag != 1) lhs += mag.str();
        lhs += "x" + std::to_string(i + 1);
      }
      out += lhs + " = " + row[n_].str();
    }
    return out;
  }

  friend bool operator==(const Flat& a, const Flat& b) { return a.n_ == b.n_ && a.rows_ == b.rows_; }

 private:
  Flat(std::size_t n, RationalMatrix rows) : n_(n), rows_(std::move(rows)) {}

  /// Whether the equation row is a consequence of this flat's equations.
  bool implies(RationalRow v) const {
    for (const auto& r : rows_) {
      std::size_t pivot = 0;
      while (r[pivot] == 0) ++pivot;
      if (v[pivot] == 0) continue;
      const Rational f = v[pivot];
      for (std::size_t k = 0; k <= n_; ++k) v[k] -= f * r[k];
    }
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
  }

  std::size_t n_ = 0;
  RationalMatrix rows_;
};

/// Finite set of proper flats of Q^n: a central subspace arrangement when every
/// member is linear, an affine hyperplane arrangement when every member is a
/// hyperplane.
class Arrangement {
 public:
  Arrangement() = default;

  Arrangement(std::size_t n, std::vector<Flat> members) : n_(n), members_(std::move(members)) {
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (members_[i].ambient_dim() != n_) fail(ErrorCode::DimensionMismatch, "member lives in the wrong ambient space");
      if (members_[i].is_ambient()) fail(ErrorCode::InvalidArgument, "member equals the ambient space");
      for (std::size_t j = 0; j < i; ++j)
        if (members_[i] == members_[j])
          fail(ErrorCode::InvalidArgument, "duplicate member " + members_[i].to_string());
    }
  }

  /// Hyperplanes normal . x = offset.
  static Arrangement from_hyperplanes(std::size_t n, const std::vector<std::pair<RationalRow, Rational>>& planes) {
    std::vector<Flat> flats;
    flats.reserve(planes.size());
    for (const auto& [normal, offset] : planes) {
      if (normal.size() != n) fail(ErrorCode::DimensionMismatch, "normal has wrong length");
      flats.push_back(Flat::hyperplane(normal, offset));
    }
    return Arrangement(n, std::move(flats));
  }

  std::size_t ambient_dim() const { return n_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<Flat>& members() const { return members_; }
  const Flat& member(std::size_t i) const {
    if (i >= members_.size()) fail(ErrorCode::IndexOutOfRange, "arrangement member " + std::to_string(i));
    return members_[i];
  }

  bool is_central() const {
    return std::all_of(members_.begin(), members_.end(), [](const Flat& f) { return f.is_linear(); });
  }

  bool is_hyperplane_arrangement() const {
    return std::all_of(members_.begin(), members_.end(), [](const Flat& f) { return f.is_hyperplane(); });
  }

  Arrangement without(std::size_t i) const {
    member(i);
    std::vector<Flat> rest;
    for (std::size_t j = 0; j < members_.size(); ++j)
      if (j != i) rest.push_back(members_[j]);
    return Arrangement(n_, std::move(rest));
  }

  /// Order-independent identity of the member set.
  std::string key() const {
    std::vector<std::string> keys;
    keys.reserve(members_.size());
    for (const auto& f : members_) keys.push_back(f.key());
    std::sort(keys.begin(), keys.end());
    std::string out = "A" + std::to_string(n_) + ":";
    for (const auto& k : keys) out += k + "#";
    return out;
  }

  bool same_set(const Arrangement& o) const { return key() == o.key(); }

 private:
  std::size_t n_ = 0;
  std::vector<Flat> members_;
};

// ---------------------------------------------------------------------------
// Named families

enum class WeylKind { A, B, D };

inline constexpr unsigned kMaxFamilyRank = 12;

namespace detail {

inline RationalRow unit_combo(std::size_t n, std::size_t i, int ci, std::size_t j = 0, int cj = 0) {
  RationalRow r(n, Rational(0));
  r[i] = ci;
  if (cj != 0) r[j] = cj;
  return r;
}

}  // namespace detail

/// A: x_i - x_j; B: x_i - x_j, x_i + x_j, x_i; D: x_i - x_j, x_i + x_j (1 <= i < j <= n).
inline Arrangement weyl_arrangement(WeylKind kind, unsigned n) {
  if (n < 1 || n > kMaxFamilyRank) fail(ErrorCode::ParameterOutOfRange, "Weyl rank must be in [1, 12]");
  std::vector<Flat> planes;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      planes.push_back(Flat::hyperplane(detail::unit_combo(n, i, 1, j, -1)));
      if (kind != WeylKind::A) planes.push_back(Flat::hyperplane(detail::unit_combo(n, i, 1, j, 1)));
    }
  if (kind == WeylKind::B)
    for (std::size_t i = 0; i < n; ++i) planes.push_back(Flat::hyperplane(detail::unit_combo(n, i, 1)));
  return Arrangement(n, std::move(planes));
}

/// D_n together with the coordinate hyperplanes x_1..x_k.
inline Arrangement db_arrangement(unsigned n, unsigned k) {
  if (k > n) fail(ErrorCode::ParameterOutOfRange, "DB(n, k) needs 0 <= k <= n");
  Arrangement d = weyl_arrangement(WeylKind::D, n);
  std::vector<Flat> planes = d.members();
  for (std::size_t i = 0; i < k; ++i) planes.push_back(Flat::hyperplane(detail::unit_combo(n, i, 1)));
  return Arrangement(n, std::move(planes));
}

/// Affine hyperplanes x_i - x_j = 0 and x_i - x_j = 1.
inline Arrangement shi_arrangement(unsigned n) {
  if (n < 1 || n > kMaxFamilyRank) fail(ErrorCode::ParameterOutOfRange, "Shi arrangement needs 1 <= n <= 12");
  std::vector<Flat> planes;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      planes.push_back(Flat::hyperplane(detail::unit_combo(n, i, 1, j, -1), 0));
      planes.push_back(Flat::hyperplane(detail::unit_combo(n, i, 1, j, -1), 1));
    }
  return Arrangement(n, std::move(planes));
}

/// Subspaces x_{i1} = ... = x_{ik}, each of dimension n - k + 1.
inline Arrangement k_equal_arrangement(unsigned n, unsigned k) {
  if (k < 2 || k > n || n > kMaxFamilyRank) fail(ErrorCode::ParameterOutOfRange, "k-equal needs 2 <= k <= n <= 12");
  std::vector<Flat> subspaces;
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == k) {
      RationalMatrix eqs;
      for (std::size_t m = 1; m < k; ++m) eqs.push_back(detail::unit_combo(n, idx[0], 1, idx[m], -1));
      subspaces.push_back(Flat::linear(n, eqs));
      return;
    }
    for (std::size_t v = start; v < n; ++v) {
      idx[pos] = v;
      rec(pos + 1, v + 1);
    }
  };
  rec(0, 0);
  return Arrangement(n, std::move(subspaces));
}

enum class NamedKind { shi, k_equal, db };

inline Arrangement named_arrangement(NamedKind kind, unsigned n, unsigned k = 0) {
  switch (kind) {
    case NamedKind::shi: return shi_arrangement(n);
    case NamedKind::k_equal: return k_equal_arrangement(n, k);
    case NamedKind::db: return db_arrangement(n, k);
  }
  fail(ErrorCode::InvalidArgument, "unknown arrangement family");
}

// ---------------------------------------------------------------------------
// Intersection poset

inline constexpr std::size_t kDefaultMaxFlats = 50'000;

struct IntersectionPoset {
  Poset poset;                  // reverse inclusion; element 0 is the ambient space
  std::vector<Flat> flats;
  std::vector<std::size_t> dims;
  std::vector<Bitset> support;  // members containing each flat
};

/// All nonempty intersections of sub-collections, found by breadth-first
/// closure under intersection with single members. Each flat equals the
/// intersection of the members containing it, so reverse inclusion of flats is
/// inclusion of supports.
inline IntersectionPoset intersection_poset(const Arrangement& a, std::size_t max_flats = kDefaultMaxFlats) {
  const std::size_t l = a.size();
  IntersectionPoset out;
  std::unordered_map<std::string, std::size_t> index;
  out.flats.push_back(Flat::ambient(a.ambient_dim()));
  out.support.emplace_back(l);
  index.emplace(out.flats[0].key(), 0);
  for (std::size_t head = 0; head < out.flats.size(); ++head) {
    for (std::size_t g = 0; g < l; ++g) {
      if (out.support[head].test(g)) continue;
      auto meet = out.flats[head].intersect(a.members()[g]);
      if (!meet) continue;
      auto key = meet->key();
      if (index.contains(key)) continue;
      if (out.flats.size() >= max_flats)
        fail(ErrorCode::SizeCap, "intersection poset exceeds " + std::to_string(max_flats) + " flats");
      Bitset sup(l);
      for (std::size_t h = 0; h < l; ++h)
        if (a.members()[h].contains(*meet)) sup.set(h);
      index.emplace(std::move(key), out.flats.size());
      out.flats.push_back(std::move(*meet));
      out.support.push_back(std::move(sup));
    }
  }
  std::vector<std::string> labels;
  labels.reserve(out.flats.size());
  for (const auto& f : out.flats) {
    out.dims.push_back(f.dim());
    labels.push_back(f.to_string());
  }
  const auto& sup = out.support;
  out.poset = Poset::from_relation(
      out.flats.size(), [&](ElementId x, ElementId y) { return sup[x].is_subset_of(sup[y]); }, std::move(labels));
  return out;
}

/// sum over flats X of mu(ambient, X) t^{dim X}
inline UniPoly charpoly_arrangement(const IntersectionPoset& ip) {
  const auto& mu = ip.poset.mobius_row(0);
  std::vector<BigInt> coeffs(ip.flats.empty() ? 1 : ip.flats[0].ambient_dim() + 1, BigInt(0));
  for (std::size_t x = 0; x < ip.flats.size(); ++x) coeffs[ip.dims[x]] += mu[x];
  return UniPoly(std::move(coeffs));
}

inline UniPoly charpoly_arrangement(const Arrangement& a, std::size_t max_flats = kDefaultMaxFlats) {
  return charpoly_arrangement(intersection_poset(a, max_flats));
}

// ---------------------------------------------------------------------------
// Deletion and restriction

struct TripleDecomposition {
  Arrangement original;
  Arrangement deleted;
  Arrangement restricted;        // lives in Q^{n-1}
  std::size_t pivot = 0;         // index of H in original
  std::size_t eliminated = 0;    // coordinate solved for on H (0-based)

  bool identity_holds() const {
    return charpoly_arrangement(original) == charpoly_arrangement(deleted) - charpoly_arrangement(restricted);
  }
};

/// Restriction of the other members to member h, written in the coordinates
/// of Q^n that remain after solving H for its first variable.
inline TripleDecomposition triple(const Arrangement& a, std::size_t h) {
  if (!a.is_hyperplane_arrangement()) fail(ErrorCode::NotHyperplanes, "deletion-restriction needs hyperplanes");
  const Flat& H = a.member(h);
  const std::size_t n = a.ambient_dim();
  const RationalRow alpha = H.normal();
  const Rational c = H.offset();
  std::size_t v = 0;
  while (alpha[v] == 0) ++v;  // RREF: alpha[v] == 1
  std::vector<Flat> restricted;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (j == h) continue;
    const RationalRow beta = a.members()[j].normal();
    const Rational d = a.members()[j].offset();
    RationalRow gamma;
    gamma.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i)
      if (i != v) gamma.push_back(beta[i] - beta[v] * alpha[i]);
    const Rational rhs = d - beta[v] * c;
    if (std::all_of(gamma.begin(), gamma.end(), [](const Rational& q) { return q == 0; })) continue;
    Flat f = Flat::hyperplane(gamma, rhs);
    if (std::find(restricted.begin(), restricted.end(), f) == restricted.end()) restricted.push_back(std::move(f));
  }
  return TripleDecomposition{a, a.without(h), Arrangement(n - 1, std::move(restricted)), h, v};
}

struct RegionCounts {
  BigInt regions;
  BigInt bounded;
};

/// r = |chi(-1)|, b = |chi(1)|.
inline RegionCounts region_counts(const Arrangement& a, std::size_t max_flats = kDefaultMaxFlats) {
  if (!a.is_hyperplane_arrangement()) fail(ErrorCode::NotHyperplanes, "region counts need a hyperplane arrangement");
  const UniPoly chi = charpoly_arrangement(a, max_flats);
  return {big_abs(chi.eval(BigInt(-1))), big_abs(chi.eval(BigInt(1)))};
}

}  // namespace charfactor
