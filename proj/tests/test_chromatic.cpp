#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "exactpart/chromatic.hpp"
#include "oracles.hpp"

using namespace exactpart;

namespace {

Mask random_subset(std::mt19937_64& rng, int n) {
  return static_cast<Mask>(rng()) & full_mask(n);
}

std::vector<Mask> sorted_classes(const Graph& g) {
  std::vector<Mask> c = oracle::optimal_coloring(g);
  std::stable_sort(c.begin(), c.end(), [](Mask a, Mask b) { return cardinality(a) > cardinality(b); });
  return c;
}

Mask union_of(const std::vector<Mask>& c, std::size_t count) {
  Mask u = 0;
  for (std::size_t i = 0; i < std::min(count, c.size()); ++i) u |= c[i];
  return u;
}

}  // namespace

TEST_CASE("colorable matches the oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 10;
    const Graph g = graphs::random(n, 0.5, rng());
    const std::vector<int> chi = oracle::chromatic_all(g);
    for (int rep = 0; rep < 10; ++rep) {
      const Mask s = random_subset(rng, n);
      for (int k = 0; k <= n; ++k) CHECK(colorable(g, s, k) == (chi[s] <= k));
    }
  }
  std::uint64_t nodes = 0;
  CHECK(colorable(graphs::complete(3), 0, 0, &nodes));
  CHECK(nodes == 1);
}

TEST_CASE("named graphs") {
  CHECK(chromatic_number(graphs::disjoint_copies(graphs::complete(13), 1)) == 13);
  CHECK(chromatic_number(graphs::petersen()) == 3);
  CHECK(chromatic_number(graphs::empty(10)) == 1);
  CHECK(chromatic_number(graphs::cycle(5)) == 3);
  CHECK(chromatic_number(graphs::complete_bipartite(3, 3)) == 2);
  CHECK(chromatic_number(graphs::empty(1)) == 1);
  CHECK(chromatic_number(graphs::complete(2)) == 2);
  CHECK(chromatic_number(graphs::path(3)) == 2);
  CHECK_THROWS_AS((void)chromatic_number(graphs::empty(0)), InputError);
  CHECK_THROWS_AS((void)chromatic_number(graphs::empty(21)), ResourceLimit);
  CHECK_THROWS_AS((void)chromatic_pipeline(graphs::empty(6), {}, 5), ResourceLimit);
}

TEST_CASE("pipeline equals the oracle on random graphs") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 1 + trial % 12;
    const double p = 0.2 + 0.1 * (trial % 7);
    const Graph g = graphs::random(n, p, rng());
    const ChromaticResult r = chromatic_pipeline(g);
    INFO("trial " << trial << " n=" << n);
    CHECK(r.chi == oracle::chromatic(g));
    // The answer is the minimum over the activated cases.
    int best = n;
    bool any = false;
    for (const auto& cs : r.trace.cases) {
      CHECK(cs.activated == cs.best.has_value());
      if (cs.best) {
        best = std::min(best, *cs.best);
        any = true;
      }
    }
    CHECK(any);
    CHECK(best == r.chi);
    CHECK(r.trace.table_depth == 27 * n / 100);
    CHECK(r.trace.thresholds.size() == 7);
    CHECK(r.cost.modeled_quantum_queries >= 1.0);
    CHECK(r.cost.modeled_quantum_queries <= static_cast<double>(r.cost.classical_nodes));
  }
}

TEST_CASE("near-complete graphs are decided by case 3") {
  // Six largest classes below 0.48n forces singleton classes up to n = 14.
  Graph g18(18);
  for (int u = 0; u < 18; ++u)
    for (int v = u + 1; v < 18; ++v)
      if (!((u == 0 && v == 1) || (u == 2 && v == 3))) g18.add_edge(u, v);
  for (const Graph& g : {graphs::complete(13), graphs::complete(14), g18}) {
    const ChromaticResult r = chromatic_pipeline(g);
    const int expected = g.order() == 18 ? 16 : g.order();
    CHECK(r.chi == expected);
    const bool case3 = (r.trace.cases[2].best && *r.trace.cases[2].best == expected) ||
                       (r.trace.cases[3].best && *r.trace.cases[3].best == expected);
    CHECK(case3);
    CHECK_FALSE(r.trace.cases[0].activated);
    CHECK_FALSE(r.trace.cases[1].activated);
  }
}

TEST_CASE("chr1a, chr1b and chr2 bound the chromatic number from above") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 4 + trial % 9;
    const Graph g = graphs::random(n, 0.45, rng());
    const std::vector<int> chi = oracle::chromatic_all(g);
    ChromaticPipeline p(g);
    for (int rep = 0; rep < 12; ++rep) {
      const Mask s = random_subset(rng, n);
      CHECK(p.chr2(s) >= chi[s]);
      CHECK(p.chr1a(s) >= chi[s]);
      CHECK(p.chr1b(s) >= chi[s]);
      CHECK(p.chr2(s) <= cardinality(s));
      CHECK(p.chr1a(s) <= cardinality(s));
    }
    CHECK(p.chr1a(0) == 0);
    CHECK(p.chr1b(0) == 0);
    CHECK(p.chr2(0) == 0);
  }
}

TEST_CASE("chr1a and chr1b on small examples") {
  // A triangle on vertices 0..2 inside a 10-vertex graph with a few more edges.
  Graph g(10);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 2);
  g.add_edge(3, 4);
  g.add_edge(5, 6);
  CHECK(chr1a(g, 0b111) == 3);
  CHECK(chr1b(g, 0b111) == 3);

  // C7 has χ = 3 and a 3/4 split of its vertices into paths.
  const Graph c7 = graphs::cycle(7);
  const Graph big = graphs::disjoint_union(c7, graphs::empty(7));
  CHECK(chr1b(big, 0b1111111) == 3);
  CHECK(chr1a(big, 0b1111111) == 3);
  CHECK(chr1b(graphs::empty(14), 0) == 0);
}

TEST_CASE("col7") {
  const Graph k7 = graphs::disjoint_union(graphs::complete(7), graphs::empty(5));
  CHECK(col7(k7, full_mask(7)));
  const Graph k8 = graphs::disjoint_union(graphs::complete(8), graphs::empty(5));
  CHECK_FALSE(col7(k8, full_mask(8)));
  CHECK_THROWS_AS((void)col7(graphs::empty(10), full_mask(7)), InputError);

  // Seven independent blobs of two vertices, fully joined to each other.
  Graph blobs(14);
  for (int u = 0; u < 14; ++u)
    for (int v = u + 1; v < 14; ++v)
      if (u / 2 != v / 2) blobs.add_edge(u, v);
  // |S| <= 0.63·14 allows 8 vertices: both of blob 0 and one from each other blob.
  CHECK(col7(blobs, 0b1010101010111));

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 10 + trial % 5;
    const Graph g = graphs::random(n, 0.75, rng());
    const std::vector<int> chi = oracle::chromatic_all(g);
    ChromaticPipeline p(g);
    const int limit = 189 * n / 300;
    for (int rep = 0; rep < 20; ++rep) {
      Mask s = random_subset(rng, n);
      while (cardinality(s) > limit) s &= s - 1;
      CHECK(p.col7(s) == (chi[s] <= 7));
    }
  }
}

TEST_CASE("planted splits pass the case gates") {
  std::mt19937_64 rng(31);
  const double densities[] = {0.3, 0.5, 0.7, 0.85, 0.9};
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 7 + trial % 7;
    const Graph g = graphs::random(n, densities[trial % 5], rng());
    const auto classes = sorted_classes(g);
    const int chi = static_cast<int>(classes.size());
    const Mask all = g.vertices();
    ChromaticPipeline p(g);
    INFO("trial " << trial << " n=" << n << " chi=" << chi);
    const Mask five = union_of(classes, 5);
    const Mask six = union_of(classes, 6);
    if (cardinality(five) * 25 >= 12 * n) {
      CHECK(std::min(chi, 5) + p.chr1a(all & ~five) == chi);
    } else if (cardinality(six) * 25 >= 12 * n) {
      CHECK(cardinality(six) * 125 < 72 * n);
      CHECK(6 + p.chr1a(all & ~six) == chi);
    } else {
      REQUIRE(chi >= 7);
      std::size_t q = 0;
      while (q < classes.size() && 2 * cardinality(union_of(classes, q + 1)) < n) ++q;
      CHECK(q >= 6);
      const Mask t = union_of(classes, q);
      if (cardinality(t) * 13 < 6 * n) {
        const Mask l = union_of(classes, q + 1);
        CHECK(2 * cardinality(l) >= n);
        CHECK(13 * cardinality(l) < 7 * n);
        if (91 * cardinality(l) < 48 * n) {
          CHECK(p.chr1a(l) + p.chr1a(all & ~l) == chi);
        } else {
          CHECK(q + 1 == 7);
          CHECK(p.col7(l));
          CHECK(7 + p.chr1a(all & ~l) == chi);
        }
      } else {
        CHECK(p.chr1a(t) + p.chr1b(all & ~t) == chi);
      }
    }
  }
}

TEST_CASE("balanced_prefix") {
  CHECK(balanced_prefix({3, 3, 3, 3, 3, 3, 3}, 3, 3) == 3);
  CHECK_THROWS_AS((void)balanced_prefix({3, 3}, 3, 1), InputError);      // p = 2
  CHECK_THROWS_AS((void)balanced_prefix({2, 3, 1}, 3, 1), InputError);   // not descending
  CHECK_THROWS_AS((void)balanced_prefix({4, 3, 1}, 3, 1), InputError);   // part above t
  CHECK_THROWS_AS((void)balanced_prefix({}, 3, 1), InputError);

  // Every admissible a for a fixed list, checked against all prefixes.
  const std::vector<int> sizes{5, 4, 4, 3, 2, 2, 1};
  const int total = 21;
  const int p = (total + 4) / 5;
  for (int a = 1; a <= p - 2; ++a) {
    const int k = balanced_prefix(sizes, 5, a);
    const int prefix = std::accumulate(sizes.begin(), sizes.begin() + k, 0);
    CHECK(prefix * p >= a * total);
    CHECK(prefix * p <= (a + 1) * total);
  }

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 20);
    const int t = 1 + static_cast<int>(rng() % 10);
    std::vector<int> s(static_cast<std::size_t>(m));
    for (int& x : s) x = static_cast<int>(rng() % static_cast<unsigned>(t + 1));
    std::sort(s.rbegin(), s.rend());
    const int tot = std::accumulate(s.begin(), s.end(), 0);
    const int pp = (tot + t - 1) / t;
    if (pp < 3) continue;
    const int a = 1 + static_cast<int>(rng() % static_cast<unsigned>(pp - 2));
    const int k = balanced_prefix(s, t, a);
    const int prefix = std::accumulate(s.begin(), s.begin() + k, 0);
    CHECK(prefix * pp >= a * tot);
    CHECK(prefix * pp <= (a + 1) * tot);
  }
}
