#pragma once

// Brute-force reference implementations shared by the unit and acceptance
// tests. Nothing here calls into the library's algorithms; only the plain
// data types (Graph, ExplicitSystem, Mask) are reused.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "exactpart/setsys.hpp"

namespace oracle {

using exactpart::Graph;
using exactpart::Mask;
using BigInt = boost::multiprecision::cpp_int;

inline int popcount(Mask m) { return __builtin_popcount(m); }

inline bool independent(const Graph& g, Mask s) {
  for (int u = 0; u < g.order(); ++u)
    for (int v = u + 1; v < g.order(); ++v)
      if (((s >> u) & 1) && ((s >> v) & 1) && g.adjacent(u, v)) return false;
  return true;
}

inline bool dominating(const Graph& g, Mask d) {
  for (int v = 0; v < g.order(); ++v) {
    bool hit = (d >> v) & 1;
    for (int u = 0; u < g.order() && !hit; ++u) hit = ((d >> u) & 1) && g.adjacent(u, v);
    if (!hit) return false;
  }
  return true;
}

// Ordered k-tuples (Z_1..Z_k) with every Z_i in `members`, counted by the
// union they produce. `disjoint` restricts to pairwise-disjoint tuples.
inline std::vector<BigInt> tuples_by_union(int n, const std::vector<Mask>& members, int k, bool disjoint) {
  std::vector<BigInt> cnt(std::size_t{1} << n);
  cnt[0] = 1;
  for (int step = 0; step < k; ++step) {
    std::vector<BigInt> next(cnt.size());
    for (std::size_t u = 0; u < cnt.size(); ++u) {
      if (cnt[u] == 0) continue;
      for (Mask z : members) {
        if (disjoint && (z & u) != 0) continue;
        next[u | z] += cnt[u];
      }
    }
    cnt.swap(next);
  }
  return cnt;
}

inline std::vector<Mask> all_subsets_where(int n, const std::function<bool(Mask)>& pred) {
  std::vector<Mask> out;
  for (Mask s = 0; s < (Mask{1} << n); ++s)
    if (pred(s)) out.push_back(s);
  return out;
}

// counts[x] for k-covers by members of `down` (a downward-closed family).
inline std::vector<BigInt> cover_counts(int n, const std::vector<Mask>& down, int k) {
  return tuples_by_union(n, down, k, false);
}

inline std::vector<BigInt> partition_counts(int n, const std::vector<Mask>& members, int k) {
  return tuples_by_union(n, members, k, true);
}

// k-packings inside X: disjoint tuples whose union is any subset of X.
inline std::vector<BigInt> packing_counts(int n, const std::vector<Mask>& members, int k) {
  const std::vector<BigInt> exact = tuples_by_union(n, members, k, true);
  std::vector<BigInt> out(exact.size());
  for (Mask x = 0; x < exact.size(); ++x)
    for (Mask u = x;; u = (u - 1) & x) {
      out[x] += exact[u];
      if (u == 0) break;
    }
  return out;
}

// χ(G[S]) for every S by the subset recurrence over independent classes.
inline std::vector<int> chromatic_all(const Graph& g) {
  const int n = g.order();
  std::vector<char> indep(std::size_t{1} << n);
  for (Mask s = 0; s < indep.size(); ++s) indep[s] = independent(g, s);
  std::vector<int> chi(indep.size(), 0);
  for (Mask s = 1; s < chi.size(); ++s) {
    const Mask low = s & (~s + 1);
    const Mask rest = s ^ low;
    int best = n + 1;
    for (Mask t = rest;; t = (t - 1) & rest) {
      const Mask cls = t | low;
      if (indep[cls]) best = std::min(best, 1 + chi[s ^ cls]);
      if (t == 0) break;
    }
    chi[s] = best;
  }
  return chi;
}

inline int chromatic(const Graph& g) { return chromatic_all(g).back(); }

// One optimal coloring, read back from the recurrence above.
inline std::vector<Mask> optimal_coloring(const Graph& g) {
  const std::vector<int> chi = chromatic_all(g);
  std::vector<Mask> classes;
  Mask s = (Mask{1} << g.order()) - 1;
  while (s != 0) {
    const Mask low = s & (~s + 1);
    const Mask rest = s ^ low;
    for (Mask t = rest;; t = (t - 1) & rest) {
      const Mask cls = t | low;
      if (independent(g, cls) && chi[s ^ cls] + 1 == chi[s]) {
        classes.push_back(cls);
        s ^= cls;
        break;
      }
      if (t == 0) break;
    }
  }
  return classes;
}

inline std::set<Mask> maximal_independent_sets(const Graph& g, Mask x) {
  std::set<Mask> out;
  for (Mask s = x;; s = (s - 1) & x) {
    if (independent(g, s)) {
      bool maximal = true;
      for (int v = 0; v < g.order() && maximal; ++v)
        if (((x >> v) & 1) && !((s >> v) & 1) && independent(g, s | (Mask{1} << v))) maximal = false;
      if (maximal) out.insert(s);
    }
    if (s == 0) break;
  }
  return out;
}

inline std::set<std::vector<int>> minimal_covers(Mask universe, const std::vector<Mask>& sets) {
  std::set<std::vector<int>> out;
  const std::size_t m = sets.size();
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << m); ++pick) {
    Mask u = 0;
    for (std::size_t i = 0; i < m; ++i)
      if ((pick >> i) & 1) u |= sets[i];
    if ((u & universe) != universe) continue;
    bool minimal = true;
    for (std::size_t i = 0; i < m && minimal; ++i) {
      if (!((pick >> i) & 1)) continue;
      Mask without = 0;
      for (std::size_t j = 0; j < m; ++j)
        if (j != i && ((pick >> j) & 1)) without |= sets[j];
      if ((without & universe) == universe) minimal = false;
    }
    if (!minimal) continue;
    std::vector<int> idx;
    for (std::size_t i = 0; i < m; ++i)
      if ((pick >> i) & 1) idx.push_back(static_cast<int>(i));
    out.insert(idx);
  }
  return out;
}

inline std::set<Mask> minimal_dominating_in(const Graph& g, Mask x) {
  std::set<Mask> out;
  for (Mask d = x;; d = (d - 1) & x) {
    if (dominating(g, d)) {
      bool minimal = true;
      for (int v = 0; v < g.order() && minimal; ++v)
        if (((d >> v) & 1) && dominating(g, d & ~(Mask{1} << v))) minimal = false;
      if (minimal) out.insert(d);
    }
    if (d == 0) break;
  }
  return out;
}

// Largest number of pairwise disjoint dominating sets.
inline int domatic(const Graph& g) {
  const int n = g.order();
  const Mask all = (Mask{1} << n) - 1;
  std::vector<int> best(std::size_t{1} << n, 0);
  for (Mask s = 1; s <= all; ++s) {
    const Mask low = s & (~s + 1);
    int b = best[s ^ low];  // the lowest vertex stays unused
    const Mask rest = s ^ low;
    for (Mask t = rest;; t = (t - 1) & rest) {
      if (dominating(g, t | low)) b = std::max(b, 1 + best[s ^ (t | low)]);
      if (t == 0) break;
    }
    best[s] = b;
  }
  return best[all];
}

// Σ_{Y⊆X} f(Y) and Σ_{Y⊆X} (−1)^{|X∖Y|} f(Y), evaluated by a double loop.
template <class R>
R zeta_direct(const std::function<R(Mask)>& f, Mask x) {
  R acc{};
  for (Mask y = x;; y = (y - 1) & x) {
    acc += f(y);
    if (y == 0) break;
  }
  return acc;
}

template <class R>
R mobius_direct(const std::function<R(Mask)>& f, Mask x) {
  R acc{};
  for (Mask y = x;; y = (y - 1) & x) {
    if (popcount(x & ~y) % 2 == 0) {
      acc += f(y);
    } else {
      acc -= f(y);
    }
    if (y == 0) break;
  }
  return acc;
}

}  // namespace oracle
