#include "exactpart/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <unordered_set>

namespace exactpart {

MeasureParams MeasureParams::for_ratio(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw InputError("measure ratio r must be positive");
  const double q = 3.0 * (r + 1.0);
  // q − log2(2^q − 1) = −log2(1 − 2^−q), evaluated without forming 2^q.
  const double gap = -std::log1p(-std::exp2(-q)) / std::numbers::ln2;
  MeasureParams p;
  p.r = r;
  p.epsilon = gap / (3.0 * (r + 1.0) * (r + 1.0));
  p.set_weight = 1.0 - (r + 1.0) * p.epsilon;
  p.elem_weight = p.epsilon;
  return p;
}

MeasureParams MeasureParams::for_system(const ExplicitSystem& sys) {
  if (sys.size() == 0) return for_ratio(1.0);
  const double ratio = static_cast<double>(sys.universe().size()) / static_cast<double>(sys.size());
  return for_ratio(std::max(1.0, ratio));
}

namespace {

class MisSearch {
 public:
  MisSearch(const Graph& g, Mask x, const MaskVisitor& visit) : g_(g), x_(x), visit_(visit) {}

  BranchStats run() {
    stats_.measure_budget = std::log2(3.0) * cardinality(x_) / 3.0;
    branch(0, x_, 0);
    stats_.distinct_outputs = seen_.size();
    return stats_;
  }

 private:
  bool maximal(Mask s) const {
    for (Mask rest = x_ & ~s; rest != 0; rest &= rest - 1) {
      if ((g_.open_nbhd(std::countr_zero(rest)) & s) == 0) return false;
    }
    return true;
  }

  // s: chosen vertices; p: vertices of x neither chosen nor adjacent to s.
  void branch(Mask s, Mask p, int depth) {
    if (stopped_) return;
    stats_.max_depth = std::max(stats_.max_depth, depth);
    if (p == 0) {
      ++stats_.leaves_visited;
      if (maximal(s) && seen_.insert(s).second && !visit_(s)) stopped_ = true;
      return;
    }
    int pivot = -1;
    int best = kMaxUniverse + 1;
    for (Mask rest = p; rest != 0; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const int deg = cardinality(g_.open_nbhd(v) & p);
      if (deg < best) {
        best = deg;
        pivot = v;
      }
    }
    for (Mask rest = g_.closed_nbhd(pivot) & p; rest != 0 && !stopped_; rest &= rest - 1) {
      const int w = std::countr_zero(rest);
      branch(s | (Mask{1} << w), p & ~g_.closed_nbhd(w), depth + 1);
    }
  }

  const Graph& g_;
  Mask x_;
  const MaskVisitor& visit_;
  BranchStats stats_;
  std::unordered_set<Mask> seen_;
  bool stopped_ = false;
};

class CoverSearch {
 public:
  CoverSearch(const ExplicitSystem& sys, MeasureParams params, const CoverVisitor& visit)
      : sys_(sys), params_(params), visit_(visit) {}

  BranchStats run() {
    std::vector<int> avail;
    for (std::size_t i = 0; i < sys_.size(); ++i) avail.push_back(static_cast<int>(i));
    const Mask all = sys_.universe().all();
    stats_.measure_budget = params_.measure(sys_.size(), cardinality(all));
    std::vector<int> chosen;
    branch(all, prune(avail, all), chosen, 0, mu(all, avail));
    stats_.distinct_outputs = seen_.size();
    return stats_;
  }

 private:
  [[nodiscard]] double mu(Mask uncovered, const std::vector<int>& avail) const {
    return params_.measure(avail.size(), cardinality(uncovered));
  }

  // Sets that cover nothing new can never carry a private element.
  [[nodiscard]] std::vector<int> prune(const std::vector<int>& avail, Mask uncovered) const {
    std::vector<int> out;
    for (int i : avail)
      if ((set(i) & uncovered) != 0) out.push_back(i);
    return out;
  }

  [[nodiscard]] Mask set(int i) const { return sys_.sets()[static_cast<std::size_t>(i)]; }

  void leaf(const std::vector<int>& chosen) {
    ++stats_.leaves_visited;
    for (std::size_t a = 0; a < chosen.size(); ++a) {
      Mask others = 0;
      for (std::size_t b = 0; b < chosen.size(); ++b)
        if (a != b) others |= set(chosen[b]);
      if ((set(chosen[a]) & ~others) == 0) return;
    }
    std::vector<int> key = chosen;
    std::sort(key.begin(), key.end());
    if (seen_.insert(key).second && !visit_(key)) stopped_ = true;
  }

  void child(Mask uncovered, const std::vector<int>& avail, std::vector<int>& chosen, int depth,
             double parent_mu, double claimed) {
    const std::vector<int> next = prune(avail, uncovered);
    if (mu(uncovered, next) + claimed > parent_mu + 1e-9) ++stats_.measure_violations;
    branch(uncovered, next, chosen, depth + 1, mu(uncovered, next));
  }

  void branch(Mask uncovered, const std::vector<int>& avail, std::vector<int>& chosen, int depth,
              double here) {
    if (stopped_) return;
    stats_.max_depth = std::max(stats_.max_depth, depth);
    if (uncovered == 0) {
      leaf(chosen);
      return;
    }

    const double threshold = params_.large_set_threshold();
    for (std::size_t pos = 0; pos < avail.size(); ++pos) {
      const int s = avail[pos];
      const int gain = cardinality(set(s) & uncovered);
      if (gain < threshold) continue;
      ++stats_.large_set_branches;
      std::vector<int> rest = avail;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pos));
      chosen.push_back(s);
      child(uncovered & ~set(s), rest, chosen, depth, here,
            params_.set_weight + params_.elem_weight * gain);
      chosen.pop_back();
      if (!stopped_) child(uncovered, rest, chosen, depth, here, params_.set_weight);
      return;
    }

    int elem = -1;
    std::vector<int> holders;
    for (Mask rest = uncovered; rest != 0; rest &= rest - 1) {
      const int u = std::countr_zero(rest);
      std::vector<int> h;
      for (int i : avail)
        if (contains(set(i), u)) h.push_back(i);
      if (elem < 0 || h.size() < holders.size()) {
        elem = u;
        holders = std::move(h);
      }
      if (holders.empty()) break;
    }
    if (holders.empty()) {
      ++stats_.leaves_visited;  // dead leaf: some element cannot be covered
      return;
    }

    std::vector<int> others;
    for (int i : avail)
      if (std::find(holders.begin(), holders.end(), i) == holders.end()) others.push_back(i);
    const auto f = holders.size();

    if (f > 12) {
      ++stats_.fallback_branches;
      const int s = holders.front();
      std::vector<int> rest(avail);
      rest.erase(std::find(rest.begin(), rest.end(), s));
      chosen.push_back(s);
      child(uncovered & ~set(s), rest, chosen, depth, here, params_.set_weight + params_.elem_weight);
      chosen.pop_back();
      if (!stopped_) child(uncovered, rest, chosen, depth, here, params_.set_weight);
      return;
    }

    if (static_cast<double>(f) > threshold) {
      ++stats_.fallback_branches;
    } else {
      ++stats_.low_frequency_branches;
    }
    // Every child drops all f holders of elem and covers elem itself.
    const double claimed = params_.set_weight * static_cast<double>(f) + params_.elem_weight;
    for (std::uint32_t pattern = 1; pattern < (std::uint32_t{1} << f) && !stopped_; ++pattern) {
      Mask next = uncovered;
      const std::size_t before = chosen.size();
      for (std::size_t b = 0; b < f; ++b) {
        if ((pattern >> b) & 1U) {
          chosen.push_back(holders[b]);
          next &= ~set(holders[b]);
        }
      }
      child(next, others, chosen, depth, here, claimed);
      chosen.resize(before);
    }
  }

  const ExplicitSystem& sys_;
  MeasureParams params_;
  const CoverVisitor& visit_;
  BranchStats stats_;
  std::set<std::vector<int>> seen_;
  bool stopped_ = false;
};

}  // namespace

BranchStats enum_mis(const Graph& g, Mask x, const MaskVisitor& visit) {
  if (!is_subset(x, g.vertices())) throw InputError("subset is not inside the vertex set");
  return MisSearch(g, x, visit).run();
}

BranchStats enum_minimal_covers(const ExplicitSystem& sys, const CoverVisitor& visit,
                                std::optional<double> r) {
  const MeasureParams params = r ? MeasureParams::for_ratio(*r) : MeasureParams::for_system(sys);
  return CoverSearch(sys, params, visit).run();
}

BranchStats enum_min_dom_in(const Graph& g, Mask x, const MaskVisitor& visit) {
  const ExplicitSystem sys = neighborhood_system(g, x);
  const std::vector<int> owner = elements(x);
  return enum_minimal_covers(sys, [&](const std::vector<int>& idx) {
    Mask d = 0;
    for (int i : idx) d |= Mask{1} << owner[static_cast<std::size_t>(i)];
    return visit(d);
  });
}

}  // namespace exactpart
