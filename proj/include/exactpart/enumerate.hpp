#pragma once

// Simple branching enumerators: maximal independent sets of induced
// subgraphs, minimal set covers, and minimal dominating sets of G that lie
// inside a prescribed vertex subset.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "exactpart/setsys.hpp"

namespace exactpart {

struct BranchStats {
  std::uint64_t leaves_visited = 0;
  std::uint64_t distinct_outputs = 0;
  int max_depth = 0;
  // log2 of the leaf bound promised by the analysis for the root instance.
  double measure_budget = 0.0;

  // Minimal-cover branching only: which rule fired at each internal node.
  std::uint64_t large_set_branches = 0;
  std::uint64_t low_frequency_branches = 0;
  // Element branches taken although every frequency exceeds 3(r+1), plus
  // binary splits used when the fan-out would exceed 2^12.
  std::uint64_t fallback_branches = 0;
  // Nodes where a child's measure plus the rule's claimed decrement exceeded
  // the parent's measure. Always zero unless the bookkeeping is broken.
  std::uint64_t measure_violations = 0;
};

// Weights of the measure μ(U, F) = set_weight·|F| + elem_weight·|U|.
struct MeasureParams {
  double r = 1.0;
  double epsilon = 0.0;
  double set_weight = 1.0;
  double elem_weight = 0.0;

  // ε = (3(r+1) − log2(2^{3(r+1)} − 1)) / (3(r+1)^2).
  static MeasureParams for_ratio(double r);
  // r = max(1, |U|/|F|); degenerate |F| = 0 uses r = 1.
  static MeasureParams for_system(const ExplicitSystem& sys);

  [[nodiscard]] double large_set_threshold() const noexcept { return 3.0 * (r + 1.0); }
  [[nodiscard]] double measure(std::size_t sets, int elements) const noexcept {
    return set_weight * static_cast<double>(sets) + elem_weight * elements;
  }
};

// Return false from a visitor to stop the enumeration early.
using MaskVisitor = std::function<bool(Mask)>;
using CoverVisitor = std::function<bool(const std::vector<int>& set_indices)>;

// Every maximal independent set of g[x], each reported once. Branches on a
// minimum-degree vertex v of the remaining graph: for each w ∈ N[v], take w
// and delete N[w]. At most 3^{|x|/3} leaves.
BranchStats enum_mis(const Graph& g, Mask x, const MaskVisitor& visit);

// Every inclusion-minimal cover of the universe by sets of `sys`, each
// reported once as a sorted list of set indices. `r` defaults to
// MeasureParams::for_system(sys).
BranchStats enum_minimal_covers(const ExplicitSystem& sys, const CoverVisitor& visit,
                                std::optional<double> r = std::nullopt);

// Minimal dominating sets D of g with D ⊆ x.
BranchStats enum_min_dom_in(const Graph& g, Mask x, const MaskVisitor& visit);

}  // namespace exactpart
