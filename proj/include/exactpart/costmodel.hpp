#pragma once

// Running-time bases b (time O*(b^n)) of the three cover/partition/packing
// strategies as functions of the enumeration constant c, where e(X) has
// O*(c^{|X|}) members. Pure numerics; no solver code is involved.

#include <array>
#include <optional>
#include <vector>

#include "exactpart/dnc_solver.hpp"

namespace exactpart {

// H(x) = −x log2 x − (1−x) log2(1−x), with H(0) = H(1) = 0.
[[nodiscard]] double binary_entropy(double x);
// 2^{H(1/4)} = 4 / 3^{3/4}: the base of C(n, n/4).
[[nodiscard]] double quarter_binomial_base();

// max(2^{H(1/4)}, √(2+c)) for 1 <= c <= 2.
[[nodiscard]] double base_main(double c);
// max(2^{H(1/4)}, (1+c)^{3/4}) for 1 <= c <= 2.
[[nodiscard]] double base_smallc(double c);

inline constexpr double kSmallC2Max = 1.0872;
inline constexpr double kAlphaMin = 0.1303;

struct SmallC2 {
  double alpha_star = 0.0;
  double base = 0.0;
  // The optimum sits on the lower end of the α range.
  bool pinned_low = false;
};
// Search term (1+c)^{3/4} c^{α/2} (1−4α)^{(4α−1)/8} (4α)^{−α/2}.
[[nodiscard]] double smallc2_search_term(double c, double alpha);
// Preprocessing term α^{−α} (1−α)^{α−1}.
[[nodiscard]] double smallc2_table_term(double alpha);
// Minimises max(search, table) over α ∈ [0.1303, 0.25] by ternary search;
// 1 <= c <= 1.0872.
[[nodiscard]] SmallC2 base_smallc2(double c);

struct Crossovers {
  double c1 = 0.0;  // √(2+c) = 2^{H(1/4)}
  double c2 = 0.0;  // (1+c)^{3/4} c^{1/8} = 4 / 3^{3/4}
  double c3 = 0.0;  // (1+c)^{3/4} = √(2+c)
};
// Bisection with tolerance 1e-9.
[[nodiscard]] Crossovers crossovers();

struct BestBase {
  StrategyTag strategy = StrategyTag::divide_divide_enumerate;
  double base = 0.0;
};
// Minimum over the three curves; ThirdLevel only counts for c <= 1.0872.
[[nodiscard]] BestBase best_base(double c);

struct BaseCurve {
  StrategyTag strategy;
  double c_min;
  double c_max;
  double (*base)(double c);
};
[[nodiscard]] const std::array<BaseCurve, 3>& base_curves();

// √13 / (2^{7/13} · 3^{23/78}).
[[nodiscard]] double chromatic_exponent();

// One piece of a step function lying between the ThirdLevel curve and √(2+c).
struct Step {
  double c_lo = 0.0;
  double c_hi = 0.0;
  double base = 0.0;
};
// Whether base_smallc2(c) <= b <= √(2+c) for all c in [lo, hi], using that
// both curves increase in c.
[[nodiscard]] bool step_separates(const Step& s);
// Greedy chain from c = 1 up to c_max (<= 1.0872): each step uses
// b = √(2 + c_lo) and extends while base_smallc2 stays at most b; step
// boundaries are truncated to four decimals.
[[nodiscard]] std::vector<Step> stepwise_separation(double c_max = 1.08);

struct CostRow {
  double c = 0.0;
  std::optional<double> alpha_star;  // present when c <= 1.0872
  double base_main = 0.0;
  double base_smallc = 0.0;
  std::optional<double> base_smallc2;
  BestBase best;
};
[[nodiscard]] CostRow cost_row(double c);
// Rows for c = cmin, cmin + step, ... <= cmax (+1e-12). Requires
// 1 <= cmin <= cmax <= 2 and step > 0.
[[nodiscard]] std::vector<CostRow> cost_table(double cmin, double cmax, double step);

}  // namespace exactpart
