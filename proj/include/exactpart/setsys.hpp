#pragma once

// Universes, subsets, graphs and implicit set families.
//
// Every subset of a universe of at most 32 elements is a single machine word.
// Families are predicate-backed: membership in F and in the downward closure
// F↓ are evaluated on demand, so families such as "independent sets of G"
// never need to be materialised.

#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace exactpart {

using Mask = std::uint32_t;

inline constexpr int kMaxUniverse = 32;

[[nodiscard]] constexpr int cardinality(Mask m) noexcept { return std::popcount(m); }

[[nodiscard]] constexpr Mask full_mask(int n) noexcept {
  return n >= 32 ? ~Mask{0} : (Mask{1} << n) - 1;
}

[[nodiscard]] constexpr bool contains(Mask set, int element) noexcept {
  return (set >> element) & 1U;
}

[[nodiscard]] constexpr bool is_subset(Mask sub, Mask super) noexcept {
  return (sub & ~super) == 0;
}

[[nodiscard]] std::vector<int> elements(Mask m);
[[nodiscard]] Mask mask_of(std::span<const int> elems);

// Thrown for malformed instances and violated preconditions on user input.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when an instance exceeds a configured size cap.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Universe {
 public:
  explicit Universe(int n, std::vector<std::string> labels = {});

  [[nodiscard]] int size() const noexcept { return n_; }
  [[nodiscard]] Mask all() const noexcept { return full_mask(n_); }
  [[nodiscard]] bool valid(Mask m) const noexcept { return is_subset(m, all()); }
  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }

 private:
  int n_;
  std::vector<std::string> labels_;
};

class Graph {
 public:
  explicit Graph(int n);
  // Validates symmetry, absence of self-loops and n <= 32.
  Graph(int n, std::vector<Mask> adjacency);

  void add_edge(int u, int v);

  [[nodiscard]] int order() const noexcept { return n_; }
  [[nodiscard]] Mask vertices() const noexcept { return full_mask(n_); }
  [[nodiscard]] Mask open_nbhd(int v) const { return adj_.at(static_cast<std::size_t>(v)); }
  [[nodiscard]] Mask closed_nbhd(int v) const { return open_nbhd(v) | (Mask{1} << v); }
  [[nodiscard]] bool adjacent(int u, int v) const { return contains(open_nbhd(u), v); }
  [[nodiscard]] int edge_count() const noexcept;
  [[nodiscard]] const std::vector<Mask>& adjacency() const noexcept { return adj_; }

  [[nodiscard]] bool is_independent(Mask s) const noexcept;
  [[nodiscard]] bool dominates(Mask d) const noexcept;

  // Graph induced on `s`, relabelled 0..|s|-1 in increasing vertex order.
  [[nodiscard]] Graph induced(Mask s) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int n_;
  std::vector<Mask> adj_;
};

// Common graphs. Vertices are 0-based.
namespace graphs {
Graph empty(int n);
Graph complete(int n);
Graph path(int n);
Graph cycle(int n);
Graph star(int leaves);  // centre is vertex 0
Graph complete_bipartite(int a, int b);
Graph petersen();
Graph disjoint_union(const Graph& a, const Graph& b);
Graph disjoint_copies(const Graph& g, int copies);
// Erdős–Rényi G(n, p) driven by a 64-bit seed.
Graph random(int n, double p, std::uint64_t seed);
}  // namespace graphs

enum class ProblemKind { cover, partition, packing };

[[nodiscard]] std::string to_string(ProblemKind kind);
[[nodiscard]] ProblemKind parse_problem_kind(const std::string& s);

enum class FamilyKind { independent_sets, explicit_list, closed_neighborhood_system, custom };

[[nodiscard]] std::string to_string(FamilyKind kind);

// Calls `visit` for candidate first members S ⊆ x; `visit` returns false to stop.
using CandidateVisitor = std::function<bool(Mask)>;
using CandidateEnumerator = std::function<void(Mask x, ProblemKind kind, const CandidateVisitor& visit)>;

// The set system Φ(I) = (U, F) seen through its membership oracles.
struct ImplicitFamily {
  Universe universe;
  std::function<bool(Mask)> member;       // S ∈ F
  std::function<bool(Mask)> member_down;  // S ∈ F↓
  FamilyKind kind = FamilyKind::custom;
  // e(X, ·): must contain the first member of some solution that does not
  // straddle X. Optional; a brute-force scan is used when absent.
  std::optional<CandidateEnumerator> candidates;
};

class ExplicitSystem {
 public:
  // Rejects sets outside the universe and duplicate sets.
  ExplicitSystem(Universe universe, std::vector<Mask> sets);

  // Indexed systems (one set per vertex, say) may legitimately repeat a set.
  static ExplicitSystem indexed(Universe universe, std::vector<Mask> sets);

  [[nodiscard]] const Universe& universe() const noexcept { return universe_; }
  [[nodiscard]] const std::vector<Mask>& sets() const noexcept { return sets_; }
  [[nodiscard]] std::size_t size() const noexcept { return sets_.size(); }
  [[nodiscard]] Mask union_of_all() const noexcept;
  [[nodiscard]] bool has_member(Mask s) const noexcept;
  [[nodiscard]] bool has_down_member(Mask s) const noexcept;

 private:
  ExplicitSystem(Universe universe, std::vector<Mask> sets, bool allow_duplicates);

  Universe universe_;
  std::vector<Mask> sets_;
};

[[nodiscard]] ImplicitFamily independent_family(const Graph& g);
[[nodiscard]] ImplicitFamily explicit_family(const ExplicitSystem& sys);

// One set N[v] per v ∈ x, over universe V. Minimal covers of the result are
// exactly the minimal dominating sets of g contained in x.
[[nodiscard]] ExplicitSystem neighborhood_system(const Graph& g, Mask x);

}  // namespace exactpart
