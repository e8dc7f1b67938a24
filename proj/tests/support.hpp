#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "charfactor/arrangement.hpp"
#include "charfactor/poset.hpp"

namespace testing_support {

using namespace charfactor;

/// 0, a, b, c, d, s, t, u, v, 1 with s > a,b,c; t > a,d; u > b,d; v > c,d.
inline Poset ten_element_lattice() {
  const std::vector<std::string> labels{"0", "a", "b", "c", "d", "s", "t", "u", "v", "1"};
  const std::vector<Cover> covers{{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 5}, {2, 5}, {3, 5}, {1, 6}, {4, 6},
                                  {2, 7}, {4, 7}, {3, 8}, {4, 8}, {5, 9}, {6, 9}, {7, 9}, {8, 9}};
  return Poset::from_covers(10, covers, labels);
}

/// 0 < a < 1 and 0 < b < c < 1.
inline Poset pentagon() {
  const std::vector<Cover> covers{{0, 1}, {1, 4}, {0, 2}, {2, 3}, {3, 4}};
  return Poset::from_covers(5, covers, {"0", "a", "b", "c", "1"});
}

/// Atoms a, b, c with joins ac, bc and top; 0 < c < ac < 1 is left modular
/// but c lies below a v b.
inline Poset level_condition_counterexample() {
  const std::vector<Cover> covers{{0, 1}, {0, 2}, {0, 3}, {1, 4}, {3, 4}, {2, 5}, {3, 5}, {4, 6}, {5, 6}};
  return Poset::from_covers(7, covers, {"0", "a", "b", "c", "ac", "bc", "1"});
}

/// Random strict partial order on k items: a random permutation with a random
/// subset of its forward pairs, transitively closed.
inline std::vector<std::vector<char>> random_partial_order(std::mt19937_64& rng, std::size_t k) {
  std::vector<std::size_t> perm(k);
  for (std::size_t i = 0; i < k; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::bernoulli_distribution edge(0.4);
  std::vector<std::vector<char>> lt(k, std::vector<char>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (edge(rng)) lt[perm[i]][perm[j]] = 1;
  for (std::size_t m = 0; m < k; ++m)
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (lt[i][m] && lt[m][j]) lt[i][j] = 1;
  return lt;
}

/// A uniformly chosen nonempty subset of the hyperplanes of B_n.
inline Arrangement random_sub_bn(std::mt19937_64& rng, unsigned n) {
  const Arrangement bn = weyl_arrangement(WeylKind::B, n);
  std::bernoulli_distribution keep(0.5);
  std::vector<Flat> chosen;
  while (chosen.empty())
    for (const auto& h : bn.members())
      if (keep(rng)) chosen.push_back(h);
  return Arrangement(n, std::move(chosen));
}

/// Random poset on up to max_size elements, edges only from lower to higher index.
inline Poset random_poset(std::mt19937_64& rng, std::size_t max_size, double density = 0.35) {
  std::uniform_int_distribution<std::size_t> size(1, max_size);
  std::bernoulli_distribution edge(density);
  const std::size_t n = size(rng);
  std::vector<Cover> rel;
  for (ElementId i = 0; i < n; ++i)
    for (ElementId j = i + 1; j < n; ++j)
      if (edge(rng)) rel.push_back({i, j});
  return Poset::from_covers(n, rel);
}

}  // namespace testing_support
