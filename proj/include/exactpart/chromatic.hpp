#pragma once

// Chromatic number by the five-case divide-and-conquer pipeline.
//
// Precomp stores χ of every subset with at most ⌊0.27n⌋ vertices. The main
// loop then looks for a large set that is 5- or 6-colorable, or splits V into
// two balanced halves, and takes the minimum over all cases. Colorability
// checks for a fixed small number of colors are exact classical searches.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "exactpart/dnc_solver.hpp"
#include "exactpart/ie_counts.hpp"
#include "exactpart/setsys.hpp"

namespace exactpart {

inline constexpr int kChromaticCap = 20;

// A threshold num/den · n, kept exact.
struct Threshold {
  std::string name;
  std::int64_t num = 0;
  std::int64_t den = 1;

  // Value for a given n, as a fraction num·n / den.
  [[nodiscard]] double value(int n) const noexcept {
    return static_cast<double>(num) * n / static_cast<double>(den);
  }
  // Compares an integer size against num·n/den.
  [[nodiscard]] bool at_most(int size, int n) const noexcept { return size * den <= num * n; }
  [[nodiscard]] bool below(int size, int n) const noexcept { return size * den < num * n; }
};

struct CaseTrace {
  struct Case {
    std::string name;
    bool activated = false;
    std::optional<int> best;
    // Loop iterations that passed the case's guard.
    std::uint64_t subsets = 0;
  };
  // Cases "1", "2", "3.1", "3.2" in that order.
  std::array<Case, 4> cases;
  std::vector<Threshold> thresholds;
  int n = 0;
  int table_depth = 0;  // ⌊0.27n⌋
};

struct ChromaticResult {
  int chi = 0;
  CaseTrace trace;
  CostReport cost;
};

// Exact k-colorability of g[s] by DSATUR backtracking. `nodes` receives the
// number of search nodes visited.
[[nodiscard]] bool colorable(const Graph& g, Mask s, int k, std::uint64_t* nodes = nullptr);

class ChromaticPipeline {
 public:
  // Runs Precomp at α = 0.27. Throws ResourceLimit above `cap` vertices and
  // InputError on the empty graph.
  explicit ChromaticPipeline(const Graph& g, CountOptions opts = {}, int cap = kChromaticCap);

  [[nodiscard]] const Graph& graph() const noexcept { return g_; }
  [[nodiscard]] int table_depth() const noexcept { return depth_; }

  // χ[S] from the table; S must have at most ⌊0.27n⌋ vertices.
  [[nodiscard]] int table_chi(Mask s) const;

  // min(|S|, 1 + χ[S∖T]) over maximal independent sets T of g[S] with
  // |S∖T| <= ⌊0.27n⌋.
  int chr2(Mask s);
  // min(|S|, Chr2(T) + Chr2(S∖T)) over T ⊆ S with |T| >= |S|/2.
  int chr1a(Mask s);
  // As chr1a with 3|S|/7 <= |T| <= 4|S|/7.
  int chr1b(Mask s);
  // χ(g[S]) <= 7 through a 3-colorable part of at least 3|S|/7 vertices and
  // a rest with Chr2 <= 4. Needs |S| <= (7/3)·0.27·n.
  bool col7(Mask s);

  ChromaticResult run();

 private:
  struct Cost {
    double q = 0.0;
    std::uint64_t nodes = 0;
    std::uint64_t lookups = 0;
    std::uint64_t leaves = 0;
  };
  struct Entry {
    int value = -1;
    Cost cost;
  };
  class Loop;

  Entry chr2_entry(Mask s);
  Entry chr1a_entry(Mask s);
  Entry chr1b_entry(Mask s);
  Entry col7_entry(Mask s);
  Entry split_entry(Mask s, std::int64_t lo_num, std::int64_t lo_den, std::int64_t hi_num, std::int64_t hi_den);
  // min{x <= 6 : Col(x, S)}, or 7 when g[S] is not 6-colorable.
  Entry small_chi(Mask s);

  Graph g_;
  int n_;
  int depth_;
  std::optional<ChiTable> table_;
  std::vector<Entry> chr2_memo_;
  std::vector<Entry> chr1a_memo_;
  std::vector<Entry> small_memo_;
};

// χ(G) through the pipeline, for 1 <= n <= kChromaticCap.
[[nodiscard]] int chromatic_number(const Graph& g);
[[nodiscard]] ChromaticResult chromatic_pipeline(const Graph& g, CountOptions opts = {}, int cap = kChromaticCap);

[[nodiscard]] int chr1a(const Graph& g, Mask s);
[[nodiscard]] int chr1b(const Graph& g, Mask s);
[[nodiscard]] bool col7(const Graph& g, Mask s);

// For sizes t >= s_1 >= s_2 >= ... with total m, p = ⌈m/t⌉ and r = m/p,
// returns the smallest k with a·r <= s_1 + ... + s_k, which then also
// satisfies s_1 + ... + s_k <= (a+1)·r. Needs 1 <= a <= p − 2.
[[nodiscard]] int balanced_prefix(const std::vector<int>& sizes, int t, int a);

}  // namespace exactpart
