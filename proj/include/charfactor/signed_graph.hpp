#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "charfactor/arrangement.hpp"
#include "charfactor/polynomial.hpp"

namespace charfactor {

enum class EdgeKind { pos, neg, half };

inline constexpr std::string_view to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::pos: return "pos";
    case EdgeKind::neg: return "neg";
    case EdgeKind::half: return "half";
  }
  return "?";
}

/// Vertices are 1-based. A half edge stores j == 0.
struct SignedEdge {
  EdgeKind kind = EdgeKind::pos;
  unsigned i = 0;
  unsigned j = 0;

  friend auto operator<=>(const SignedEdge&, const SignedEdge&) = default;
};

class SignedGraph {
 public:
  SignedGraph() = default;
  explicit SignedGraph(unsigned n) : n_(n) {}

  SignedGraph(unsigned n, std::vector<SignedEdge> edges) : n_(n) {
    for (const auto& e : edges) add(e);
  }

  void add(SignedEdge e) {
    if (e.kind == EdgeKind::half) {
      e.j = 0;
      if (e.i < 1 || e.i > n_) fail(ErrorCode::IndexOutOfRange, "half edge at vertex " + std::to_string(e.i));
    } else {
      if (e.i > e.j) std::swap(e.i, e.j);
      if (e.i < 1 || e.j > n_ || e.i == e.j)
        fail(ErrorCode::IndexOutOfRange, "edge " + std::to_string(e.i) + "," + std::to_string(e.j));
    }
    if (has(e)) fail(ErrorCode::InvalidArgument, "duplicate edge");
    edges_.push_back(e);
  }

  bool has(const SignedEdge& e) const { return std::find(edges_.begin(), edges_.end(), e) != edges_.end(); }

  static SignedEdge pos(unsigned i, unsigned j) { return {EdgeKind::pos, i, j}; }
  static SignedEdge neg(unsigned i, unsigned j) { return {EdgeKind::neg, i, j}; }
  static SignedEdge half(unsigned i) { return {EdgeKind::half, i, 0}; }

  unsigned vertex_count() const { return n_; }
  const std::vector<SignedEdge>& edges() const { return edges_; }

  /// Edge sets compared without regard to insertion order.
  bool same_edges(const SignedGraph& o) const {
    if (n_ != o.n_) return false;
    auto a = edges_, b = o.edges_;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
  }

 private:
  unsigned n_ = 0;
  std::vector<SignedEdge> edges_;
};

/// x_i = x_j -> pos, x_i = -x_j -> neg, x_i = 0 -> half.
inline SignedGraph graph_of(const Arrangement& a) {
  SignedGraph g(static_cast<unsigned>(a.ambient_dim()));
  for (const auto& f : a.members()) {
    if (!f.is_hyperplane() || !f.is_linear()) fail(ErrorCode::NotSubBn, f.to_string() + " is not a central hyperplane");
    const RationalRow nv = f.normal();
    std::vector<unsigned> support;
    for (std::size_t i = 0; i < nv.size(); ++i)
      if (nv[i] != 0) support.push_back(static_cast<unsigned>(i + 1));
    if (support.size() == 1) {
      g.add(SignedGraph::half(support[0]));
    } else if (support.size() == 2 && nv[support[1] - 1] == -1) {
      g.add(SignedGraph::pos(support[0], support[1]));
    } else if (support.size() == 2 && nv[support[1] - 1] == 1) {
      g.add(SignedGraph::neg(support[0], support[1]));
    } else {
      fail(ErrorCode::NotSubBn, f.to_string() + " is not of the form x_i = x_j, x_i = -x_j or x_i = 0");
    }
  }
  return g;
}

inline Arrangement arrangement_of(const SignedGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<Flat> planes;
  for (const auto& e : g.edges()) {
    RationalRow r(n, Rational(0));
    r[e.i - 1] = 1;
    if (e.kind == EdgeKind::pos) r[e.j - 1] = -1;
    if (e.kind == EdgeKind::neg) r[e.j - 1] = 1;
    planes.push_back(Flat::hyperplane(r));
  }
  return Arrangement(n, std::move(planes));
}

struct Coloring {
  long long s = 0;
  std::vector<long long> colors;  // colors[v - 1]
};

inline bool is_proper(const SignedGraph& g, const Coloring& c) {
  if (c.colors.size() != g.vertex_count()) fail(ErrorCode::SizeMismatch, "coloring length differs from vertex count");
  for (long long v : c.colors)
    if (v < -c.s || v > c.s) fail(ErrorCode::InvalidArgument, "color " + std::to_string(v) + " outside [-s, s]");
  for (const auto& e : g.edges()) {
    const long long ci = c.colors[e.i - 1];
    switch (e.kind) {
      case EdgeKind::pos:
        if (ci == c.colors[e.j - 1]) return false;
        break;
      case EdgeKind::neg:
        if (ci == -c.colors[e.j - 1]) return false;
        break;
      case EdgeKind::half:
        if (ci == 0) return false;
        break;
    }
  }
  return true;
}

inline constexpr std::uint64_t kDefaultEnumerationCap = 100'000'000;

namespace detail {

/// base^exp, saturating just above cap.
inline std::uint64_t capped_power(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && v > cap / base) return cap + 1;
    v *= base;
  }
  return v;
}

}  // namespace detail

/// Backtracking over vertices 1..n, checking each edge once both ends are set.
inline BigInt count_proper(const SignedGraph& g, long long s, std::uint64_t cap = kDefaultEnumerationCap) {
  if (s < 0) fail(ErrorCode::ParameterOutOfRange, "radius must be nonnegative");
  const unsigned n = g.vertex_count();
  if (detail::capped_power(static_cast<std::uint64_t>(2 * s + 1), n, cap) > cap)
    fail(ErrorCode::SizeCap, "(2s+1)^n exceeds the enumeration cap");
  // constraints[v]: edges whose larger endpoint is v (0-based)
  struct Constraint {
    EdgeKind kind;
    unsigned other;
  };
  std::vector<std::vector<Constraint>> constraints(n);
  for (const auto& e : g.edges()) {
    if (e.kind == EdgeKind::half) constraints[e.i - 1].push_back({e.kind, 0});
    else constraints[e.j - 1].push_back({e.kind, e.i - 1});
  }
  std::vector<long long> col(n, 0);
  std::uint64_t count = 0;
  auto rec = [&](auto&& self, unsigned v) -> void {
    if (v == n) {
      ++count;
      return;
    }
    for (long long c = -s; c <= s; ++c) {
      bool ok = true;
      for (const auto& k : constraints[v]) {
        if ((k.kind == EdgeKind::half && c == 0) || (k.kind == EdgeKind::pos && c == col[k.other]) ||
            (k.kind == EdgeKind::neg && c == -col[k.other])) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      col[v] = c;
      self(self, v + 1);
    }
  };
  rec(rec, 0);
  return BigInt(count);
}

/// Interpolated through t = 2s + 1 for s = 0..n.
inline UniPoly chromatic_polynomial(const SignedGraph& g, std::uint64_t cap = kDefaultEnumerationCap) {
  std::vector<std::pair<BigInt, BigInt>> samples;
  for (long long s = 0; s <= static_cast<long long>(g.vertex_count()); ++s)
    samples.emplace_back(BigInt(2 * s + 1), count_proper(g, s, cap));
  return interpolate(samples);
}

}  // namespace charfactor
