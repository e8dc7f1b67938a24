#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "charfactor/arrangement.hpp"
#include "charfactor/multipoly.hpp"
#include "charfactor/polynomial.hpp"

namespace charfactor {

/// Column vector (theta(x_1), ..., theta(x_n)) of polynomials in n variables.
class Derivation {
 public:
  Derivation() = default;

  explicit Derivation(std::vector<MultiPoly> components) : components_(std::move(components)) {
    const std::size_t n = components_.size();
    for (auto& c : components_) {
      if (c.is_zero()) c = MultiPoly(n);
      else if (c.nvars() != n) fail(ErrorCode::DimensionMismatch, "derivation component has the wrong variable count");
    }
  }

  std::size_t nvars() const { return components_.size(); }
  const std::vector<MultiPoly>& components() const { return components_; }
  const MultiPoly& operator[](std::size_t i) const { return components_.at(i); }

  bool is_zero() const {
    return std::all_of(components_.begin(), components_.end(), [](const MultiPoly& p) { return p.is_zero(); });
  }

  /// Common total degree of the nonzero components; nullopt for the zero
  /// derivation or a non-homogeneous one.
  std::optional<unsigned> component_degree() const {
    std::optional<unsigned> d;
    for (const auto& c : components_) {
      if (c.is_zero()) continue;
      auto h = c.homogeneous_degree();
      if (!h || (d && *d != *h)) return std::nullopt;
      d = h;
    }
    return d;
  }

  bool is_homogeneous() const { return is_zero() || component_degree().has_value(); }

  /// deg theta = component degree - 1.
  std::optional<int> degree() const {
    auto d = component_degree();
    if (!d) return std::nullopt;
    return static_cast<int>(*d) - 1;
  }

  /// theta(sum a_i x_i) = sum a_i theta(x_i)
  MultiPoly apply(std::span<const Rational> linear) const {
    if (linear.size() != nvars()) fail(ErrorCode::DimensionMismatch, "linear form has the wrong length");
    MultiPoly out(nvars());
    for (std::size_t i = 0; i < nvars(); ++i)
      if (linear[i] != 0) out += components_[i] * linear[i];
    return out;
  }

  friend Derivation operator*(const MultiPoly& f, const Derivation& d) {
    std::vector<MultiPoly> c;
    c.reserve(d.nvars());
    for (const auto& x : d.components_) c.push_back(f * x);
    return Derivation(std::move(c));
  }

  friend bool operator==(const Derivation&, const Derivation&) = default;

 private:
  std::vector<MultiPoly> components_;
};

using DerivationMatrix = std::vector<Derivation>;

/// Normalized linear form of a central hyperplane: integer coefficients with
/// content 1 and a positive first nonzero coefficient.
inline MultiPoly linear_form_of(const Flat& h) {
  if (!h.is_hyperplane() || !h.is_linear()) fail(ErrorCode::NotHyperplanes, h.to_string() + " is not a central hyperplane");
  auto row = h.integer_equations().front();
  row.pop_back();
  std::vector<Rational> q(row.begin(), row.end());
  return MultiPoly::linear_form(q);
}

/// Product of the normalized linear forms; the empty product is 1.
inline MultiPoly defining_form(const Arrangement& a) {
  MultiPoly q = MultiPoly::constant(a.ambient_dim(), 1);
  for (const auto& h : a.members()) q *= linear_form_of(h);
  return q;
}

/// First hyperplane H with alpha_H not dividing theta(alpha_H).
inline std::optional<std::size_t> module_violation(const Derivation& theta, const Arrangement& a) {
  if (theta.nvars() != a.ambient_dim()) fail(ErrorCode::DimensionMismatch, "derivation and arrangement disagree on dimension");
  for (std::size_t h = 0; h < a.size(); ++h) {
    const MultiPoly alpha = linear_form_of(a.member(h));
    auto row = a.member(h).integer_equations().front();
    row.pop_back();
    const std::vector<Rational> coeffs(row.begin(), row.end());
    if (!divides(alpha, theta.apply(coeffs)).divides) return h;
  }
  return std::nullopt;
}

inline bool is_in_derivation_module(const Derivation& theta, const Arrangement& a) {
  return !module_violation(theta, a).has_value();
}

enum class DerivationKind { power, hat, theta };

/// power: x_i^d. hat: x_1...x_n / x_i. theta: x_1...x_k times hat.
inline Derivation named_derivation(DerivationKind kind, unsigned n, unsigned param = 0) {
  if (n < 1) fail(ErrorCode::ParameterOutOfRange, "derivations need n >= 1");
  if (kind == DerivationKind::theta && param > n) fail(ErrorCode::ParameterOutOfRange, "theta_k needs k <= n");
  std::vector<MultiPoly> c;
  MultiPoly prefix = MultiPoly::constant(n, 1);
  if (kind == DerivationKind::theta)
    for (unsigned i = 0; i < param; ++i) prefix *= MultiPoly::variable(n, i);
  for (unsigned i = 0; i < n; ++i) {
    if (kind == DerivationKind::power) {
      c.push_back(param == 0 ? MultiPoly::constant(n, 1) : MultiPoly::variable(n, i, param));
      continue;
    }
    MultiPoly hat = MultiPoly::constant(n, 1);
    for (unsigned j = 0; j < n; ++j)
      if (j != i) hat *= MultiPoly::variable(n, j);
    c.push_back(prefix * hat);
  }
  return Derivation(std::move(c));
}

inline Derivation power_derivation(unsigned n, unsigned d) { return named_derivation(DerivationKind::power, n, d); }

enum class FreeFamily { A, B, D, DB };

/// A: X^0..X^{n-1}. B: X^1, X^3, .., X^{2n-1}. D: X^1, .., X^{2n-3}, hat.
/// DB(n, k): X^1, .., X^{2n-3}, theta_k.
inline DerivationMatrix family_basis(FreeFamily family, unsigned n, unsigned k = 0) {
  if (n < 1) fail(ErrorCode::ParameterOutOfRange, "family bases need n >= 1");
  DerivationMatrix m;
  switch (family) {
    case FreeFamily::A:
      for (unsigned d = 0; d < n; ++d) m.push_back(power_derivation(n, d));
      break;
    case FreeFamily::B:
      for (unsigned i = 0; i < n; ++i) m.push_back(power_derivation(n, 2 * i + 1));
      break;
    case FreeFamily::D:
    case FreeFamily::DB:
      for (unsigned i = 0; i + 1 < n; ++i) m.push_back(power_derivation(n, 2 * i + 1));
      m.push_back(family == FreeFamily::D ? named_derivation(DerivationKind::hat, n)
                                          : named_derivation(DerivationKind::theta, n, k));
      break;
  }
  return m;
}

inline MultiPoly partial_derivative(const MultiPoly& p, std::size_t var) {
  MultiPoly out(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    if (e[var] == 0) continue;
    Exponent d = e;
    --d[var];
    out += MultiPoly::monomial(std::move(d), c * e[var]);
  }
  return out;
}

/// A basis known without search: a matching named family, the identity for an
/// empty arrangement, [Q] on a line, and (Euler, (dQ/dx2, -dQ/dx1)) in the plane.
inline std::optional<DerivationMatrix> discover_basis(const Arrangement& a) {
  const auto n = static_cast<unsigned>(a.ambient_dim());
  if (a.empty()) {
    DerivationMatrix id;
    for (unsigned i = 0; i < n; ++i) {
      std::vector<MultiPoly> c(n, MultiPoly(n));
      c[i] = MultiPoly::constant(n, 1);
      id.emplace_back(std::move(c));
    }
    return id;
  }
  if (!a.is_hyperplane_arrangement() || !a.is_central()) return std::nullopt;
  if (n == 1) return DerivationMatrix{Derivation({defining_form(a)})};
  if (n == 2) {
    const MultiPoly q = defining_form(a);
    return DerivationMatrix{power_derivation(2, 1), Derivation({partial_derivative(q, 1), -partial_derivative(q, 0)})};
  }
  const std::string key = a.key();
  if (key == weyl_arrangement(WeylKind::A, n).key()) return family_basis(FreeFamily::A, n);
  if (key == weyl_arrangement(WeylKind::B, n).key()) return family_basis(FreeFamily::B, n);
  if (key == weyl_arrangement(WeylKind::D, n).key()) return family_basis(FreeFamily::D, n);
  for (unsigned k = 0; k <= n; ++k)
    if (key == db_arrangement(n, k).key()) return family_basis(FreeFamily::DB, n, k);
  return std::nullopt;
}

struct FreeBasisReport {
  bool is_basis = false;
  Rational c = 0;               // det = c * Q when is_basis
  MultiPoly determinant;
  std::vector<int> degrees;     // per column
  std::vector<int> exponents;   // sorted, degree + 1
  UniPoly chi;                  // prod (t - e)
  std::string reason;           // why not a basis
};

/// Saito's criterion: the columns lie in D(A) and det equals a nonzero scalar
/// times the defining form.
inline FreeBasisReport saito_check(const DerivationMatrix& theta, const Arrangement& a) {
  const std::size_t n = a.ambient_dim();
  if (theta.size() != n) fail(ErrorCode::DimensionMismatch, "need exactly n derivations");
  for (std::size_t j = 0; j < n; ++j) {
    if (theta[j].nvars() != n) fail(ErrorCode::DimensionMismatch, "derivation " + std::to_string(j + 1) + " has the wrong length");
    if (auto h = module_violation(theta[j], a))
      fail(ErrorCode::NotInModule, "column " + std::to_string(j + 1) + " fails at hyperplane " + a.member(*h).to_string());
    if (!theta[j].is_homogeneous()) fail(ErrorCode::NotHomogeneous, "column " + std::to_string(j + 1) + " is not homogeneous");
  }
  FreeBasisReport r;
  PolyMatrix m(n, std::vector<MultiPoly>(n, MultiPoly(n)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = theta[j][i];
  r.determinant = multi_determinant(m, n);
  for (std::size_t j = 0; j < n; ++j) {
    if (theta[j].is_zero()) {
      r.reason = "column " + std::to_string(j + 1) + " is zero";
      return r;
    }
    r.degrees.push_back(*theta[j].degree());
  }
  MultiPoly rest = r.determinant;
  for (std::size_t h = 0; h < a.size() && !rest.is_zero(); ++h) {
    auto d = divides(linear_form_of(a.member(h)), rest);
    if (!d.divides) {
      r.reason = "determinant is not divisible by " + a.member(h).to_string();
      return r;
    }
    rest = std::move(*d.quotient);
  }
  if (rest.is_zero()) {
    r.reason = "determinant vanishes";
    return r;
  }
  if (!rest.is_constant()) {
    r.reason = "determinant is Q times " + rest.to_string();
    return r;
  }
  r.is_basis = true;
  r.c = rest.constant_term();
  for (int d : r.degrees) r.exponents.push_back(d + 1);
  std::sort(r.exponents.begin(), r.exponents.end());
  r.chi = UniPoly::constant(1);
  for (int e : r.exponents) r.chi *= UniPoly::linear(BigInt(e));
  return r;
}

// ---------------------------------------------------------------------------
// Addition-deletion

struct Certificate {
  bool available = false;
  bool free = false;
  std::vector<int> exponents;
  std::string source;  // "supplied", "discovered" or empty
};

struct AdditionDeletionReport {
  std::array<Certificate, 3> certificates;  // original, deleted, restricted
  std::vector<std::string> certified;       // roles with a free certificate
  bool pattern_holds = false;
  std::string predicted_role;               // role not certified, if any
  std::vector<int> predicted_exponents;
  std::string detail;
};

struct SuppliedBases {
  std::optional<DerivationMatrix> original, deleted, restricted;
};

namespace detail {

inline Certificate certify(const Arrangement& a, const std::optional<DerivationMatrix>& supplied) {
  Certificate c;
  std::optional<DerivationMatrix> basis = supplied;
  c.source = supplied ? "supplied" : "discovered";
  if (!basis) basis = discover_basis(a);
  if (!basis) {
    c.source.clear();
    return c;
  }
  c.available = true;
  FreeBasisReport r = saito_check(*basis, a);
  c.free = r.is_basis;
  c.exponents = r.exponents;
  return c;
}

/// Removes one copy of each element of small from big; nullopt unless small is
/// a sub-multiset.
inline std::optional<std::vector<int>> multiset_minus(std::vector<int> big, const std::vector<int>& small) {
  for (int v : small) {
    auto it = std::find(big.begin(), big.end(), v);
    if (it == big.end()) return std::nullopt;
    big.erase(it);
  }
  return big;
}

inline std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace detail

/// exp A = {e_1..e_{n-1}, e_n}, exp A' = {e_1..e_{n-1}, e_n - 1}, exp A'' = {e_1..e_{n-1}}:
/// any two certified statements determine the third.
inline AdditionDeletionReport addition_deletion_check(const Arrangement& a, std::size_t h, const SuppliedBases& bases = {}) {
  const TripleDecomposition t = triple(a, h);
  AdditionDeletionReport r;
  r.certificates[0] = detail::certify(t.original, bases.original);
  r.certificates[1] = detail::certify(t.deleted, bases.deleted);
  r.certificates[2] = detail::certify(t.restricted, bases.restricted);
  static constexpr std::array<const char*, 3> kRoles{"original", "deleted", "restricted"};
  for (std::size_t i = 0; i < 3; ++i)
    if (r.certificates[i].available && r.certificates[i].free) r.certified.emplace_back(kRoles[i]);
  if (r.certified.size() < 2)
    fail(ErrorCode::InsufficientCertificates, "need free bases for two of the triple, have " + std::to_string(r.certified.size()));

  const auto& ca = r.certificates[0];
  const auto& cd = r.certificates[1];
  const auto& cr = r.certificates[2];
  const bool fa = ca.available && ca.free, fd = cd.available && cd.free, fr = cr.available && cr.free;
  // Recover the full exponent pattern from whichever two are certified.
  std::optional<std::vector<int>> common;
  std::optional<int> top;
  if (fa && fr) {
    auto extra = detail::multiset_minus(ca.exponents, cr.exponents);
    if (extra && extra->size() == 1) {
      common = cr.exponents;
      top = extra->front();
    }
  } else if (fd && fr) {
    auto extra = detail::multiset_minus(cd.exponents, cr.exponents);
    if (extra && extra->size() == 1) {
      common = cr.exponents;
      top = extra->front() + 1;
    }
  } else if (fa && fd) {
    for (int e : ca.exponents) {
      std::vector<int> rest = *detail::multiset_minus(ca.exponents, {e});
      std::vector<int> lowered = rest;
      lowered.push_back(e - 1);
      if (detail::sorted(lowered) == detail::sorted(cd.exponents)) {
        common = rest;
        top = e;
        break;
      }
    }
  }
  if (!common) {
    r.detail = "pattern mismatch between certified exponents";
    return r;
  }
  std::vector<int> exp_a = *common, exp_d = *common;
  exp_a.push_back(*top);
  exp_d.push_back(*top - 1);
  exp_a = detail::sorted(exp_a);
  exp_d = detail::sorted(exp_d);
  const std::vector<int> exp_r = detail::sorted(*common);
  r.pattern_holds = (!fa || ca.exponents == exp_a) && (!fd || cd.exponents == exp_d) && (!fr || cr.exponents == exp_r);
  if (!fa) {
    r.predicted_role = kRoles[0];
    r.predicted_exponents = exp_a;
  } else if (!fd) {
    r.predicted_role = kRoles[1];
    r.predicted_exponents = exp_d;
  } else if (!fr) {
    r.predicted_role = kRoles[2];
    r.predicted_exponents = exp_r;
  }
  if (!r.pattern_holds) r.detail = "pattern mismatch between certified exponents";
  return r;
}

// ---------------------------------------------------------------------------
// Inductive freeness

inline constexpr std::size_t kDefaultInductiveBudget = 10'000;

struct InductiveFreenessResult {
  bool free = false;
  std::vector<int> exponents;        // when free
  std::vector<Flat> deletion_chain;  // hyperplanes removed in order, down to the empty arrangement
  std::size_t nodes = 0;
};

namespace detail {

struct InductiveSearch {
  struct Entry {
    std::optional<std::vector<int>> exponents;
    std::optional<std::size_t> chosen;
  };
  std::map<std::string, Entry> memo;
  std::size_t nodes = 0;
  std::size_t budget = 0;

  const Entry& solve(const Arrangement& a) {
    const std::string key = a.key();
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    if (++nodes > budget) fail(ErrorCode::BudgetExceeded, "inductive freeness search exceeded " + std::to_string(budget) + " nodes");
    Entry e;
    if (a.empty()) {
      e.exponents = std::vector<int>(a.ambient_dim(), 0);
    } else {
      for (std::size_t i = a.size(); i-- > 0;) {
        const TripleDecomposition t = triple(a, i);
        const auto deleted = solve(t.deleted).exponents;
        if (!deleted) continue;
        const auto restricted = solve(t.restricted).exponents;
        if (!restricted) continue;
        auto extra = multiset_minus(*deleted, *restricted);
        if (!extra || extra->size() != 1) continue;
        std::vector<int> exps = *restricted;
        exps.push_back(extra->front() + 1);
        e.exponents = sorted(std::move(exps));
        e.chosen = i;
        break;
      }
    }
    return memo.emplace(key, std::move(e)).first->second;
  }
};

}  // namespace detail

/// Empty arrangements are inductively free; A is when some H has A' and A''
/// inductively free with exp A'' contained in exp A'.
inline InductiveFreenessResult is_inductively_free(const Arrangement& a, std::size_t budget = kDefaultInductiveBudget) {
  if (!a.is_hyperplane_arrangement() || !a.is_central())
    fail(ErrorCode::NotHyperplanes, "inductive freeness needs a central hyperplane arrangement");
  detail::InductiveSearch search;
  search.budget = budget;
  InductiveFreenessResult r;
  const auto top = search.solve(a).exponents;
  r.nodes = search.nodes;
  if (!top) return r;
  r.free = true;
  r.exponents = *top;
  Arrangement cur = a;
  while (!cur.empty()) {
    const std::size_t i = *search.memo.at(cur.key()).chosen;
    r.deletion_chain.push_back(cur.member(i));
    cur = cur.without(i);
  }
  return r;
}

enum class Tristate { yes, no, unknown };

/// Recursive freeness is not decided here.
inline Tristate is_recursively_free(const Arrangement&) { return Tristate::unknown; }

}  // namespace charfactor
