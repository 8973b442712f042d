#pragma once

// Divide-and-conquer deciders for k-cover, k-partition and k-packing.
//
// Every quantum search loop of the original algorithms becomes an exhaustive,
// short-circuiting classical loop. Alongside the answer the solver reports
// what the explored search tree would have cost as a quantum algorithm: a
// loop whose iterations cost q_1..q_m is charged sqrt(q_1^2 + ... + q_m^2),
// sequential steps add up and a table lookup costs 1.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "exactpart/ie_counts.hpp"
#include "exactpart/setsys.hpp"
#include "exactpart/transforms.hpp"

namespace exactpart {

enum class StrategyTag { divide_divide_enumerate, enumerate_then_divide, third_level };

[[nodiscard]] std::string to_string(StrategyTag tag);
// Accepts "dde", "etd", "third" and the full names.
[[nodiscard]] StrategyTag parse_strategy(const std::string& s);

struct Strategy {
  StrategyTag tag = StrategyTag::divide_divide_enumerate;
  Alpha alpha{1, 4};

  static Strategy divide_divide_enumerate() { return {StrategyTag::divide_divide_enumerate, Alpha(1, 4)}; }
  static Strategy enumerate_then_divide() { return {StrategyTag::enumerate_then_divide, Alpha(1, 4)}; }
  static Strategy third_level(Alpha alpha = Alpha(1, 5)) { return {StrategyTag::third_level, alpha}; }

  // DivideDivideEnumerate and EnumerateThenDivide need α = 1/4;
  // ThirdLevel needs 0.1303 <= α < 1/4.
  void validate() const;
};

struct CostReport {
  // Nodes of the simple-branching search tree that the short-circuiting
  // exploration walked through, counting a reused subresult as often as the
  // tree contains it.
  std::uint64_t classical_nodes = 0;
  // Search nodes actually evaluated after memoisation.
  std::uint64_t evaluated_nodes = 0;
  double modeled_quantum_queries = 0.0;
  std::uint64_t table_lookups = 0;
  std::uint64_t enumerator_leaves = 0;
  // Preprocessing: entries of the decision table and transform work.
  std::uint64_t table_entries = 0;

  CostReport& operator+=(const CostReport& o);
};

struct SolveResult {
  bool sat = false;
  CostReport cost;
};

struct SolverOptions {
  CountOptions counts;
  // Prebuilt decision table at the strategy's α; must match kind and α.
  std::shared_ptr<const CountTable> table;
};

class DncSolver {
 public:
  DncSolver(ImplicitFamily fam, ProblemKind kind, Strategy strategy, SolverOptions opts = {});

  [[nodiscard]] const ImplicitFamily& family() const noexcept { return fam_; }
  [[nodiscard]] ProblemKind kind() const noexcept { return kind_; }
  [[nodiscard]] const Strategy& strategy() const noexcept { return strategy_; }

  // Whether (U, F) has a k-solution of the solver's kind. Throws on k < 1.
  SolveResult solve(int k);

  // A k-tuple certifying a "true" answer, validated against the definition;
  // nullopt when no solution exists. Uses full (α = 1) decision tables.
  std::optional<std::vector<Mask>> witness(int k);

  // Split predicate: k_L + k_R = k with k_L, k_R >= 1 such that L has a
  // k_L-solution and U∖L a k_R-solution. With `x`, every member of the
  // k_L-solution on L must additionally satisfy |S| >= |L| − x.
  bool ksplit_check(int k, Mask left, std::optional<int> x = std::nullopt);

  // Members of e(X) for this kind (cached).
  const std::vector<Mask>& candidates(Mask x);

 private:
  struct Res {
    bool ok = false;
    std::uint64_t nodes = 0;
    std::uint64_t lookups = 0;
    std::uint64_t leaves = 0;
    double q = 0.0;
  };
  class Loop;
  struct Step {
    Mask taken;
    int spent;
  };
  enum class Level : std::uint8_t { half, leaf, left, third };

  void ensure_table(int k);
  const CountTable& full_table(int k);
  bool base(Mask x) const;
  std::vector<Step> steps(Mask x);
  // Packings may leave one side of a split without members.
  int min_split() const noexcept { return kind_ == ProblemKind::packing ? 0 : 1; }
  Res lookup(Mask x, int j);
  Res top(int k);
  Res half(Mask x, int j);
  Res leaf(Mask x, int j);
  Res left(Mask x, int j);
  Res small(Mask x, int j);
  Res third(Mask x, int j);
  Res split_pair(Mask x, int j, int min_left);
  template <class F>
  Res memo(Level level, Mask x, int j, F&& compute);

  ImplicitFamily fam_;
  ProblemKind kind_;
  Strategy strategy_;
  SolverOptions opts_;
  int n_;
  int quarter_floor_;   // ⌊n/4⌋
  int quarter_ceil_;    // ⌈n/4⌉
  int half_floor_;      // ⌊n/2⌋
  int half_ceil_;       // ⌈n/2⌉
  int depth_;           // ⌊αn⌋
  int depth_ceil_;      // ⌈αn⌉
  std::shared_ptr<const CountTable> table_;
  std::shared_ptr<const CountTable> full_;
  std::unordered_map<Mask, std::vector<Mask>> cand_cache_;
  std::unordered_map<std::uint64_t, Res> memo_;
  std::uint64_t evaluated_ = 0;
};

// Independent validation of a tuple against the definitions.
[[nodiscard]] bool is_valid_solution(const ImplicitFamily& fam, ProblemKind kind,
                                     const std::vector<Mask>& parts);

// F = dominating sets of g (member), F↓ = every subset of V. Candidates are
// the minimal dominating sets of g inside X.
[[nodiscard]] ImplicitFamily dominating_family(const Graph& g);

struct DomaticResult {
  int domatic = 0;
  // Partition of V into `domatic` dominating sets.
  std::vector<Mask> classes;
  CostReport cost;
};
[[nodiscard]] DomaticResult domatic_number(const Graph& g, Strategy strategy = Strategy::divide_divide_enumerate());

}  // namespace exactpart
