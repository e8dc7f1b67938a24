#include <catch_amalgamated.hpp>

#include "charfactor/signed_graph.hpp"
#include "support.hpp"

using namespace charfactor;
using testing_support::random_sub_bn;

namespace {

// Oracle: enumerate every coloring in [-s, s]^n and test each edge directly.
long long brute_colorings(const SignedGraph& g, long long s) {
  const unsigned n = g.vertex_count();
  std::vector<long long> c(n, -s);
  long long count = 0;
  while (true) {
    bool ok = true;
    for (const auto& e : g.edges()) {
      const long long ci = c[e.i - 1];
      if (e.kind == EdgeKind::half && ci == 0) ok = false;
      if (e.kind == EdgeKind::pos && ci == c[e.j - 1]) ok = false;
      if (e.kind == EdgeKind::neg && ci == -c[e.j - 1]) ok = false;
    }
    if (ok) ++count;
    unsigned i = 0;
    while (i < n && c[i] == s) c[i++] = -s;
    if (i == n) break;
    ++c[i];
  }
  return count;
}

}  // namespace

TEST_CASE("graphs of arrangements") {
  const SignedGraph a3 = graph_of(weyl_arrangement(WeylKind::A, 3));
  CHECK(a3.same_edges(SignedGraph(3, {SignedGraph::pos(1, 2), SignedGraph::pos(1, 3), SignedGraph::pos(2, 3)})));
  const SignedGraph b3 = graph_of(weyl_arrangement(WeylKind::B, 3));
  CHECK(b3.edges().size() == 9);
  for (unsigned i = 1; i <= 3; ++i) {
    CHECK(b3.has(SignedGraph::half(i)));
    for (unsigned j = i + 1; j <= 3; ++j) {
      CHECK(b3.has(SignedGraph::pos(i, j)));
      CHECK(b3.has(SignedGraph::neg(i, j)));
    }
  }
  const Arrangement scaled = Arrangement(2, {Flat::hyperplane({Rational(2), Rational(-2)})});
  CHECK(graph_of(scaled).same_edges(SignedGraph(2, {SignedGraph::pos(1, 2)})));
  CHECK_THROWS_AS(graph_of(shi_arrangement(2)), Error);
  const Arrangement skew = Arrangement(2, {Flat::hyperplane({Rational(1), Rational(2)})});
  CHECK_THROWS_AS(graph_of(skew), Error);
}

TEST_CASE("proper colorings") {
  CHECK_FALSE(is_proper(SignedGraph(1, {SignedGraph::half(1)}), Coloring{1, {0}}));
  CHECK(is_proper(SignedGraph(2, {SignedGraph::pos(1, 2)}), Coloring{1, {1, -1}}));
  CHECK_FALSE(is_proper(SignedGraph(2, {SignedGraph::neg(1, 2)}), Coloring{1, {1, -1}}));
  CHECK_THROWS_AS(is_proper(SignedGraph(2), Coloring{1, {0}}), Error);
}

TEST_CASE("coloring counts") {
  CHECK(count_proper(graph_of(weyl_arrangement(WeylKind::A, 2)), 1) == 6);
  CHECK(count_proper(graph_of(weyl_arrangement(WeylKind::D, 2)), 1) == 4);
  CHECK(count_proper(SignedGraph(3), 0) == 1);
  CHECK_THROWS_AS(count_proper(SignedGraph(10), 10, 1000), Error);
}

TEST_CASE("chromatic polynomials") {
  CHECK(chromatic_polynomial(graph_of(weyl_arrangement(WeylKind::A, 3))) == UniPoly::from_roots({0, 1, 2}));
  CHECK(chromatic_polynomial(graph_of(weyl_arrangement(WeylKind::B, 2))) == UniPoly::from_roots({1, 3}));
  CHECK(chromatic_polynomial(graph_of(weyl_arrangement(WeylKind::D, 3))) == UniPoly::from_roots({1, 3, 2}));
}

TEST_CASE("zaslavsky agreement and counts on random sub-arrangements of B_n") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const unsigned n = 1 + trial % 4;
    const Arrangement a = random_sub_bn(rng, n);
    const SignedGraph g = graph_of(a);
    const UniPoly chi = chromatic_polynomial(g);
    CHECK(chi == charpoly_arrangement(a));
    for (long long s = 0; s <= 4; ++s) {
      const BigInt c = count_proper(g, s);
      CHECK(c == chi.eval(BigInt(2 * s + 1)));
      CHECK(c == brute_colorings(g, s));
    }
    CHECK(graph_of(arrangement_of(g)).same_edges(g));
  }
}

TEST_CASE("adding an edge never increases the count") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    const unsigned n = 2 + trial % 3;
    const SignedGraph g = graph_of(random_sub_bn(rng, n));
    const SignedGraph full = graph_of(weyl_arrangement(WeylKind::B, n));
    for (const auto& e : full.edges()) {
      if (g.has(e)) continue;
      SignedGraph bigger = g;
      bigger.add(e);
      for (long long s = 0; s <= 2; ++s) CHECK(count_proper(bigger, s) <= count_proper(g, s));
    }
  }
}
