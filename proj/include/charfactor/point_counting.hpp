#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "charfactor/arrangement.hpp"
#include "charfactor/signed_graph.hpp"

namespace charfactor {

/// Every member is an intersection of hyperplanes x_i = x_j, x_i = -x_j, x_i = 0.
inline bool embedded_in_bn(const Arrangement& a) {
  const std::size_t n = a.ambient_dim();
  if (n == 0) return true;
  const Arrangement bn = weyl_arrangement(WeylKind::B, static_cast<unsigned>(n));
  for (const auto& f : a.members()) {
    if (!f.is_linear()) return false;
    Flat meet = Flat::ambient(n);
    for (const auto& h : bn.members())
      if (h.contains(f)) meet = *meet.intersect(h);
    if (!(meet == f)) return false;
  }
  return true;
}

namespace detail {

/// Integer equations of every member, one block per member, as int64.
inline std::vector<std::vector<std::vector<std::int64_t>>> small_equations(const Arrangement& a) {
  std::vector<std::vector<std::vector<std::int64_t>>> out;
  for (const auto& f : a.members()) {
    auto& block = out.emplace_back();
    for (const auto& row : f.integer_equations()) {
      auto& r = block.emplace_back();
      for (const auto& v : row) {
        if (!fits_int64(v) || big_abs(v) > BigInt(1) << 40)
          fail(ErrorCode::ParameterOutOfRange, "equation coefficient too large for point enumeration");
        r.push_back(v.convert_to<std::int64_t>());
      }
    }
  }
  return out;
}

/// Visits every point of {lo..hi}^n in odometer order; returns how many the
/// predicate accepted.
template <class Pred>
std::uint64_t count_grid(std::size_t n, std::int64_t lo, std::int64_t hi, Pred&& keep) {
  std::vector<std::int64_t> x(n, lo);
  std::uint64_t count = 0;
  while (true) {
    if (keep(x)) ++count;
    std::size_t i = 0;
    while (i < n && x[i] == hi) x[i++] = lo;
    if (i == n) break;
    ++x[i];
  }
  return count;
}

}  // namespace detail

/// Points of [-s, s]^n lying on no member.
inline BigInt cube_count(const Arrangement& a, long long s, std::uint64_t cap = kDefaultEnumerationCap) {
  if (s < 0) fail(ErrorCode::ParameterOutOfRange, "radius must be nonnegative");
  if (!embedded_in_bn(a)) fail(ErrorCode::NotEmbedded, "arrangement is not embedded in the type B arrangement");
  const std::size_t n = a.ambient_dim();
  if (detail::capped_power(static_cast<std::uint64_t>(2 * s + 1), n, cap) > cap)
    fail(ErrorCode::SizeCap, "(2s+1)^n exceeds the enumeration cap");
  const auto eqs = detail::small_equations(a);
  return BigInt(detail::count_grid(n, -s, s, [&](const std::vector<std::int64_t>& x) {
    for (const auto& block : eqs) {
      bool on = true;
      for (const auto& r : block) {
        std::int64_t acc = 0;
        for (std::size_t i = 0; i < n; ++i) acc += r[i] * x[i];
        if (acc != r[n]) {
          on = false;
          break;
        }
      }
      if (on) return false;
    }
    return true;
  }));
}

/// The intersection structure survives reduction mod p: for every flat Y and
/// member K outside its support, the equations of supp(Y) + K have the same
/// coefficient rank and augmented rank over F_p as over Q.
inline bool is_good_prime(const IntersectionPoset& ip, const Arrangement& a, std::uint64_t p) {
  if (!is_prime(p)) fail(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  std::vector<std::vector<std::vector<BigInt>>> blocks;
  for (const auto& f : a.members()) blocks.push_back(f.integer_equations());
  auto ranks_agree = [&](const std::vector<std::size_t>& members) {
    std::vector<std::vector<BigInt>> aug;
    RationalMatrix aug_q, coeff_q;
    std::vector<std::vector<BigInt>> coeff;
    for (std::size_t m : members)
      for (const auto& row : blocks[m]) {
        aug.push_back(row);
        coeff.emplace_back(row.begin(), row.end() - 1);
        RationalRow q(row.begin(), row.end());
        aug_q.push_back(q);
        q.pop_back();
        coeff_q.push_back(std::move(q));
      }
    return rank_mod_p(aug, p) == rank(aug_q) && rank_mod_p(coeff, p) == rank(coeff_q);
  };
  for (std::size_t y = 0; y < ip.flats.size(); ++y) {
    std::vector<std::size_t> members;
    for (std::size_t m = ip.support[y].find_first(); m != Bitset::npos; m = ip.support[y].find_next(m))
      members.push_back(m);
    if (!ranks_agree(members)) return false;
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (ip.support[y].test(k)) continue;
      members.push_back(k);
      const bool ok = ranks_agree(members);
      members.pop_back();
      if (!ok) return false;
    }
  }
  return true;
}

inline bool is_good_prime(const Arrangement& a, std::uint64_t p, std::size_t max_flats = kDefaultMaxFlats) {
  return is_good_prime(intersection_poset(a, max_flats), a, p);
}

/// Points of F_p^n lying on no member.
inline BigInt finite_field_count(const Arrangement& a, std::uint64_t p, std::uint64_t cap = kDefaultEnumerationCap,
                                 std::size_t max_flats = kDefaultMaxFlats) {
  if (!is_good_prime(a, p, max_flats)) fail(ErrorCode::BadPrime, "p = " + std::to_string(p) + " changes the intersection structure");
  const std::size_t n = a.ambient_dim();
  if (detail::capped_power(p, n, cap) > cap) fail(ErrorCode::SizeCap, "p^n exceeds the enumeration cap");
  auto eqs = detail::small_equations(a);
  const auto mod = static_cast<std::int64_t>(p);
  for (auto& block : eqs)
    for (auto& r : block)
      for (auto& v : r) v = ((v % mod) + mod) % mod;
  return BigInt(detail::count_grid(n, 0, mod - 1, [&](const std::vector<std::int64_t>& x) {
    for (const auto& block : eqs) {
      bool on = true;
      for (const auto& r : block) {
        std::int64_t acc = 0;
        for (std::size_t i = 0; i < n; ++i) acc = (acc + r[i] * x[i]) % mod;
        if (acc != r[n]) {
          on = false;
          break;
        }
      }
      if (on) return false;
    }
    return true;
  }));
}

enum class CountMethod { cube, ffield };

struct CountInterpolation {
  UniPoly chi;
  std::vector<std::pair<BigInt, BigInt>> samples;  // (t, count)
  std::vector<std::uint64_t> skipped_primes;
  std::optional<bool> lattice_agrees;              // empty when the lattice was not computable
};

struct CountOptions {
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
  std::uint64_t max_prime = 13;
  std::size_t max_flats = kDefaultMaxFlats;
  bool compare_with_lattice = true;
};

/// chi is monic of degree n, so chi - t^n is pinned down by n samples.
inline CountInterpolation charpoly_via_counts(const Arrangement& a, CountMethod method, const CountOptions& opt = {}) {
  const auto n = static_cast<unsigned>(a.ambient_dim());
  CountInterpolation out;
  if (method == CountMethod::cube) {
    for (long long s = 0; s <= static_cast<long long>(n); ++s) {
      if (detail::capped_power(static_cast<std::uint64_t>(2 * s + 1), n, opt.enumeration_cap) > opt.enumeration_cap) break;
      out.samples.emplace_back(BigInt(2 * s + 1), cube_count(a, s, opt.enumeration_cap));
    }
  } else {
    const IntersectionPoset ip = intersection_poset(a, opt.max_flats);
    for (std::uint64_t p = 2; p <= opt.max_prime; ++p) {
      if (!is_prime(p)) continue;
      if (!is_good_prime(ip, a, p)) {
        out.skipped_primes.push_back(p);
        continue;
      }
      if (detail::capped_power(p, n, opt.enumeration_cap) > opt.enumeration_cap) break;
      out.samples.emplace_back(BigInt(p), finite_field_count(a, p, opt.enumeration_cap, opt.max_flats));
    }
  }
  if (out.samples.size() < std::max(1u, n))
    fail(ErrorCode::InsufficientSamples, "only " + std::to_string(out.samples.size()) + " sample points for degree " + std::to_string(n));
  std::vector<std::pair<BigInt, BigInt>> reduced;
  for (const auto& [t, c] : out.samples) reduced.emplace_back(t, c - big_pow(t, n));
  out.chi = interpolate(reduced) + UniPoly::monomial(n);
  if (opt.compare_with_lattice) {
    try {
      out.lattice_agrees = out.chi == charpoly_arrangement(a, opt.max_flats);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SizeCap) throw;
    }
  }
  return out;
}

inline constexpr unsigned kMaxStirlingN = 12;

/// Number of set partitions of [n] into j blocks of size at most k, by direct
/// enumeration of restricted growth strings. Rows are cached per (k, n).
inline BigInt bounded_stirling(unsigned k, unsigned n, unsigned j) {
  if (k < 1) fail(ErrorCode::ParameterOutOfRange, "block-size cap must be positive");
  if (n > kMaxStirlingN) fail(ErrorCode::ParameterOutOfRange, "bounded Stirling enumeration is capped at n = 12");
  if (j > n) return 0;
  const unsigned cap = std::min(k, n == 0 ? 1u : n);
  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, std::vector<std::uint64_t>> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find({cap, n}); it != cache.end()) return BigInt(it->second[j]);
  }
  std::vector<std::uint64_t> row(n + 1, 0);
  if (n == 0) {
    row[0] = 1;
  } else {
    std::vector<unsigned> sizes;
    sizes.reserve(n);
    auto rec = [&](auto&& self, unsigned placed) -> void {
      if (placed == n) {
        ++row[sizes.size()];
        return;
      }
      for (auto& sz : sizes) {
        if (sz == cap) continue;
        ++sz;
        self(self, placed + 1);
        --sz;
      }
      sizes.push_back(1);
      self(self, placed + 1);
      sizes.pop_back();
    };
    rec(rec, 0);
  }
  std::lock_guard lock(mu);
  cache.emplace(std::pair{cap, n}, row);
  return BigInt(row[j]);
}

struct KEqualReport {
  UniPoly chi;
  FallingFactorialExpansion expansion;
  unsigned divisor_order = 0;  // ceil(n / (k - 1))
  bool divisible = false;      // (t)_{divisor_order} divides chi
};

/// sum_j S_{k-1}(n, j) (t)_j
inline KEqualReport k_equal_charpoly(unsigned n, unsigned k) {
  if (k < 2 || k > n) fail(ErrorCode::ParameterOutOfRange, "k-equal needs 2 <= k <= n");
  KEqualReport r;
  for (unsigned j = 0; j <= n; ++j) {
    BigInt c = bounded_stirling(k - 1, n, j);
    if (c == 0) continue;
    r.expansion.coeffs[j] = c;
    r.chi += c * UniPoly::falling_factorial(j);
  }
  r.divisor_order = (n + k - 2) / (k - 1);
  UniPoly rest = r.chi;
  r.divisible = true;
  for (unsigned i = 0; i < r.divisor_order && r.divisible; ++i) {
    auto q = rest.divide_by_linear(BigInt(i));
    if (q) rest = *q;
    else r.divisible = false;
  }
  return r;
}

/// t (t - n)^{n-1}
inline UniPoly shi_charpoly(unsigned n) {
  if (n < 1) fail(ErrorCode::ParameterOutOfRange, "Shi closed form needs n >= 1");
  return UniPoly::t() * UniPoly::linear(BigInt(n)).pow(n - 1);
}

}  // namespace charfactor
