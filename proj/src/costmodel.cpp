#include "exactpart/costmodel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace exactpart {

namespace {

constexpr double kTol = 1e-9;

void check_range(double c, double lo, double hi, const char* what) {
  if (!(c >= lo && c <= hi)) {
    throw InputError(std::string(what) + " needs " + std::to_string(lo) + " <= c <= " + std::to_string(hi));
  }
}

// Root of f on [lo, hi], where f changes sign.
template <class F>
double bisect(F f, double lo, double hi) {
  double flo = f(lo);
  while (hi - lo > kTol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double quarter_binomial_base() { return std::exp2(binary_entropy(0.25)); }

double base_main(double c) {
  check_range(c, 1.0, 2.0, "base_main");
  return std::max(quarter_binomial_base(), std::sqrt(2.0 + c));
}

double base_smallc(double c) {
  check_range(c, 1.0, 2.0, "base_smallc");
  return std::max(quarter_binomial_base(), std::pow(1.0 + c, 0.75));
}

double smallc2_search_term(double c, double alpha) {
  double f = std::pow(1.0 + c, 0.75) * std::pow(c, alpha / 2.0) * std::pow(4.0 * alpha, -alpha / 2.0);
  // (1−4α)^{(4α−1)/8} tends to 1 as α → 1/4.
  if (alpha < 0.25) f *= std::pow(1.0 - 4.0 * alpha, (4.0 * alpha - 1.0) / 8.0);
  return f;
}

double smallc2_table_term(double alpha) {
  return std::pow(alpha, -alpha) * std::pow(1.0 - alpha, alpha - 1.0);
}

SmallC2 base_smallc2(double c) {
  check_range(c, 1.0, kSmallC2Max, "base_smallc2");
  auto cost = [c](double a) { return std::max(smallc2_search_term(c, a), smallc2_table_term(a)); };
  double lo = kAlphaMin;
  double hi = 0.25;
  while (hi - lo > kTol) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (cost(m1) < cost(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  SmallC2 out;
  out.alpha_star = 0.5 * (lo + hi);
  out.base = cost(out.alpha_star);
  out.pinned_low = out.alpha_star - kAlphaMin < 10 * kTol;
  return out;
}

Crossovers crossovers() {
  const double q = quarter_binomial_base();
  Crossovers out;
  out.c1 = bisect([q](double c) { return std::sqrt(2.0 + c) - q; }, 1.0, 2.0);
  out.c2 = bisect([q](double c) { return std::pow(1.0 + c, 0.75) * std::pow(c, 0.125) - q; }, 1.0, 1.2);
  out.c3 = bisect([](double c) { return std::pow(1.0 + c, 0.75) - std::sqrt(2.0 + c); }, 1.0, 2.0);
  return out;
}

namespace {

double smallc2_base_only(double c) { return base_smallc2(c).base; }

}  // namespace

const std::array<BaseCurve, 3>& base_curves() {
  static const std::array<BaseCurve, 3> curves{{
      {StrategyTag::divide_divide_enumerate, 1.0, 2.0, &base_main},
      {StrategyTag::enumerate_then_divide, 1.0, 2.0, &base_smallc},
      {StrategyTag::third_level, 1.0, kSmallC2Max, &smallc2_base_only},
  }};
  return curves;
}

BestBase best_base(double c) {
  check_range(c, 1.0, 2.0, "best_base");
  BestBase best{StrategyTag::divide_divide_enumerate, base_main(c)};
  const double etd = base_smallc(c);
  if (etd < best.base) best = {StrategyTag::enumerate_then_divide, etd};
  if (c <= kSmallC2Max) {
    const double third = base_smallc2(c).base;
    if (third < best.base) best = {StrategyTag::third_level, third};
  }
  return best;
}

double chromatic_exponent() {
  return std::sqrt(13.0) / (std::pow(2.0, 7.0 / 13.0) * std::pow(3.0, 23.0 / 78.0));
}

bool step_separates(const Step& s) {
  if (s.c_lo > s.c_hi || s.c_lo < 1.0 || s.c_hi > kSmallC2Max) return false;
  return base_smallc2(s.c_hi).base <= s.base && s.base <= std::sqrt(2.0 + s.c_lo);
}

std::vector<Step> stepwise_separation(double c_max) {
  check_range(c_max, 1.0, kSmallC2Max, "stepwise_separation");
  std::vector<Step> steps;
  double c = 1.0;
  while (c < c_max) {
    const double b = std::sqrt(2.0 + c);
    double hi = c_max;
    if (base_smallc2(hi).base > b) {
      hi = bisect([b](double x) { return base_smallc2(x).base - b; }, c, c_max);
      // Stay on the safe side of the crossing, at four decimals.
      hi = std::floor(hi * 1e4) / 1e4;
      if (base_smallc2(hi).base > b) hi -= 1e-4;
    }
    if (hi <= c) throw std::logic_error("step function does not advance");
    steps.push_back({c, hi, b});
    c = hi;
  }
  return steps;
}

CostRow cost_row(double c) {
  CostRow row;
  row.c = c;
  row.base_main = base_main(c);
  row.base_smallc = base_smallc(c);
  if (c <= kSmallC2Max) {
    const SmallC2 s = base_smallc2(c);
    row.alpha_star = s.alpha_star;
    row.base_smallc2 = s.base;
  }
  row.best = best_base(c);
  return row;
}

std::vector<CostRow> cost_table(double cmin, double cmax, double step) {
  if (!(step > 0.0)) throw InputError("cost table step must be positive");
  if (!(cmin <= cmax)) throw InputError("cost table range is inverted");
  check_range(cmin, 1.0, 2.0, "cost_table");
  check_range(cmax, 1.0, 2.0, "cost_table");
  std::vector<CostRow> rows;
  for (long i = 0;; ++i) {
    // Rounded to 12 decimals so that 1.0 + 3·0.01 prints as 1.03.
    const double c = std::round((cmin + static_cast<double>(i) * step) * 1e12) / 1e12;
    if (c > cmax + 1e-12) break;
    rows.push_back(cost_row(std::min(c, 2.0)));
  }
  return rows;
}

}  // namespace exactpart
