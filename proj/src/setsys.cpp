#include "exactpart/setsys.hpp"

#include <algorithm>
#include <memory>
#include <random>
#include <unordered_set>

#include "exactpart/enumerate.hpp"

namespace exactpart {

std::vector<int> elements(Mask m) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(cardinality(m)));
  while (m != 0) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

Mask mask_of(std::span<const int> elems) {
  Mask m = 0;
  for (int e : elems) {
    if (e < 0 || e >= kMaxUniverse) throw InputError("element out of range: " + std::to_string(e));
    m |= Mask{1} << e;
  }
  return m;
}

Universe::Universe(int n, std::vector<std::string> labels) : n_(n), labels_(std::move(labels)) {
  if (n < 1 || n > kMaxUniverse) {
    throw InputError("universe size must be in [1, 32], got " + std::to_string(n));
  }
  if (!labels_.empty() && labels_.size() != static_cast<std::size_t>(n)) {
    throw InputError("label count does not match universe size");
  }
}

Graph::Graph(int n) : n_(n), adj_(static_cast<std::size_t>(std::max(n, 0)), 0) {
  if (n < 1 || n > kMaxUniverse) {
    throw InputError("graph order must be in [1, 32], got " + std::to_string(n));
  }
}

Graph::Graph(int n, std::vector<Mask> adjacency) : Graph(n) {
  if (adjacency.size() != static_cast<std::size_t>(n)) throw InputError("adjacency size mismatch");
  adj_ = std::move(adjacency);
  for (int v = 0; v < n; ++v) {
    const Mask nb = adj_[static_cast<std::size_t>(v)];
    if (!is_subset(nb, vertices())) throw InputError("neighbour outside vertex set");
    if (contains(nb, v)) throw InputError("self-loop at vertex " + std::to_string(v));
    for (int u : elements(nb)) {
      if (!contains(adj_[static_cast<std::size_t>(u)], v)) throw InputError("adjacency not symmetric");
    }
  }
}

void Graph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw InputError("edge endpoint out of range");
  if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
  adj_[static_cast<std::size_t>(u)] |= Mask{1} << v;
  adj_[static_cast<std::size_t>(v)] |= Mask{1} << u;
}

int Graph::edge_count() const noexcept {
  int twice = 0;
  for (Mask nb : adj_) twice += cardinality(nb);
  return twice / 2;
}

bool Graph::is_independent(Mask s) const noexcept {
  for (Mask rest = s; rest != 0; rest &= rest - 1) {
    const int v = std::countr_zero(rest);
    if ((adj_[static_cast<std::size_t>(v)] & s) != 0) return false;
  }
  return true;
}

bool Graph::dominates(Mask d) const noexcept {
  Mask covered = d;
  for (Mask rest = d; rest != 0; rest &= rest - 1) {
    covered |= adj_[static_cast<std::size_t>(std::countr_zero(rest))];
  }
  return covered == vertices();
}

Graph Graph::induced(Mask s) const {
  const std::vector<int> vs = elements(s & vertices());
  Graph h(static_cast<int>(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      if (adjacent(vs[i], vs[j])) h.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return h;
}

namespace graphs {

Graph empty(int n) { return Graph(n); }

Graph complete(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph path(int n) {
  Graph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph cycle(int n) {
  if (n < 3) throw InputError("cycle needs at least 3 vertices");
  Graph g = path(n);
  g.add_edge(n - 1, 0);
  return g;
}

Graph star(int leaves) {
  Graph g(leaves + 1);
  for (int v = 1; v <= leaves; ++v) g.add_edge(0, v);
  return g;
}

Graph complete_bipartite(int a, int b) {
  Graph g(a + b);
  for (int u = 0; u < a; ++u)
    for (int v = 0; v < b; ++v) g.add_edge(u, a + v);
  return g;
}

Graph petersen() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);          // outer cycle
    g.add_edge(i, i + 5);                // spokes
    g.add_edge(5 + i, 5 + (i + 2) % 5);  // inner pentagram
  }
  return g;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  Graph g(a.order() + b.order());
  for (int u = 0; u < a.order(); ++u)
    for (int v : elements(a.open_nbhd(u)))
      if (u < v) g.add_edge(u, v);
  for (int u = 0; u < b.order(); ++u)
    for (int v : elements(b.open_nbhd(u)))
      if (u < v) g.add_edge(a.order() + u, a.order() + v);
  return g;
}

Graph disjoint_copies(const Graph& g, int copies) {
  if (copies < 1) throw InputError("need at least one copy");
  Graph out = g;
  for (int i = 1; i < copies; ++i) out = disjoint_union(out, g);
  return out;
}

Graph random(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng) < p) g.add_edge(u, v);
  return g;
}

}  // namespace graphs

std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::cover: return "cover";
    case ProblemKind::partition: return "partition";
    case ProblemKind::packing: return "packing";
  }
  return "?";
}

ProblemKind parse_problem_kind(const std::string& s) {
  if (s == "cover") return ProblemKind::cover;
  if (s == "partition") return ProblemKind::partition;
  if (s == "packing") return ProblemKind::packing;
  throw InputError("unknown problem kind: " + s);
}

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::independent_sets: return "independent-sets-of-graph";
    case FamilyKind::explicit_list: return "explicit-list";
    case FamilyKind::closed_neighborhood_system: return "closed-neighborhood-system";
    case FamilyKind::custom: return "custom";
  }
  return "?";
}

ExplicitSystem::ExplicitSystem(Universe universe, std::vector<Mask> sets)
    : ExplicitSystem(std::move(universe), std::move(sets), false) {}

ExplicitSystem ExplicitSystem::indexed(Universe universe, std::vector<Mask> sets) {
  return ExplicitSystem(std::move(universe), std::move(sets), true);
}

ExplicitSystem::ExplicitSystem(Universe universe, std::vector<Mask> sets, bool allow_duplicates)
    : universe_(std::move(universe)), sets_(std::move(sets)) {
  std::unordered_set<Mask> seen;
  for (Mask s : sets_) {
    if (!universe_.valid(s)) throw InputError("set contains an element outside the universe");
    if (!seen.insert(s).second && !allow_duplicates) throw InputError("duplicate set in system");
  }
}

Mask ExplicitSystem::union_of_all() const noexcept {
  Mask u = 0;
  for (Mask s : sets_) u |= s;
  return u;
}

bool ExplicitSystem::has_member(Mask s) const noexcept {
  return std::find(sets_.begin(), sets_.end(), s) != sets_.end();
}

bool ExplicitSystem::has_down_member(Mask s) const noexcept {
  return std::any_of(sets_.begin(), sets_.end(), [s](Mask t) { return is_subset(s, t); });
}

ImplicitFamily independent_family(const Graph& g) {
  auto graph = std::make_shared<const Graph>(g);
  auto indep = [graph](Mask s) { return graph->is_independent(s); };
  ImplicitFamily fam{Universe(g.order()), indep, indep, FamilyKind::independent_sets, std::nullopt};
  // Maximal independent sets of G[X] serve covers, partitions and packings:
  // growing a colour class to a maximal one only shrinks the remainder.
  fam.candidates = [graph](Mask x, ProblemKind, const CandidateVisitor& visit) {
    enum_mis(*graph, x, visit);
  };
  return fam;
}

ImplicitFamily explicit_family(const ExplicitSystem& sys) {
  auto shared = std::make_shared<const ExplicitSystem>(sys);
  ImplicitFamily fam{sys.universe(), [shared](Mask s) { return shared->has_member(s); },
                     [shared](Mask s) { return shared->has_down_member(s); },
                     FamilyKind::explicit_list, std::nullopt};
  fam.candidates = [shared](Mask x, ProblemKind kind, const CandidateVisitor& visit) {
    if (kind == ProblemKind::cover) {
      // Maximal members of r(F↓, X): the maximal traces T ∩ X.
      std::vector<Mask> traces;
      for (Mask t : shared->sets()) traces.push_back(t & x);
      std::sort(traces.begin(), traces.end());
      traces.erase(std::unique(traces.begin(), traces.end()), traces.end());
      for (Mask t : traces) {
        const bool dominated = std::any_of(traces.begin(), traces.end(),
                                           [t](Mask o) { return o != t && is_subset(t, o); });
        if (!dominated && !visit(t)) return;
      }
      return;
    }
    for (Mask t : shared->sets()) {
      if (is_subset(t, x) && !visit(t)) return;
    }
  };
  return fam;
}

ExplicitSystem neighborhood_system(const Graph& g, Mask x) {
  if (!is_subset(x, g.vertices())) throw InputError("subset is not inside the vertex set");
  std::vector<Mask> sets;
  for (int v : elements(x)) sets.push_back(g.closed_nbhd(v));
  return ExplicitSystem::indexed(Universe(g.order()), std::move(sets));
}

}  // namespace exactpart
