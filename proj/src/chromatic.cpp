#include "exactpart/chromatic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "exactpart/enumerate.hpp"

namespace exactpart {

namespace {

const Alpha kDepth(27, 100);

struct Dsatur {
  const Graph& g;
  int k;
  std::vector<int> color;
  std::uint64_t nodes = 0;

  bool run(Mask remaining, int used) {
    ++nodes;
    if (remaining == 0) return true;
    // Most distinct neighbour colours first, then most uncoloured neighbours.
    int best = -1;
    int best_sat = -1;
    int best_deg = -1;
    std::uint32_t best_colors = 0;
    for (Mask r = remaining; r != 0; r &= r - 1) {
      const int v = std::countr_zero(r);
      std::uint32_t seen = 0;
      for (Mask nb = g.open_nbhd(v) & ~remaining; nb != 0; nb &= nb - 1) {
        const int c = color[static_cast<std::size_t>(std::countr_zero(nb))];
        if (c >= 0) seen |= 1U << c;
      }
      const int sat = std::popcount(seen);
      const int deg = cardinality(g.open_nbhd(v) & remaining);
      if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
        best = v;
        best_sat = sat;
        best_deg = deg;
        best_colors = seen;
      }
    }
    const Mask rest = remaining & ~(Mask{1} << best);
    const int limit = std::min(k, used + 1);
    for (int c = 0; c < limit; ++c) {
      if ((best_colors >> c) & 1U) continue;
      color[static_cast<std::size_t>(best)] = c;
      if (run(rest, std::max(used, c + 1))) return true;
    }
    color[static_cast<std::size_t>(best)] = -1;
    return false;
  }
};

}  // namespace

bool colorable(const Graph& g, Mask s, int k, std::uint64_t* nodes) {
  if (nodes != nullptr) *nodes = 1;
  if (s == 0) return true;
  if (k <= 0) return false;
  // Vertices outside s never receive a colour, so they are invisible.
  Dsatur d{g, k, std::vector<int>(static_cast<std::size_t>(g.order()), -1)};
  const bool ok = d.run(s, 0);
  if (nodes != nullptr) *nodes = d.nodes;
  return ok;
}

class ChromaticPipeline::Loop {
 public:
  void add(const Cost& c) {
    qsq_ += c.q * c.q;
    nodes_ += c.nodes;
    lookups_ += c.lookups;
    leaves_ += c.leaves;
  }
  [[nodiscard]] Cost result() const {
    return Cost{std::max(1.0, std::sqrt(qsq_)), nodes_ + 1, lookups_, leaves_};
  }

 private:
  double qsq_ = 0.0;
  std::uint64_t nodes_ = 0;
  std::uint64_t lookups_ = 0;
  std::uint64_t leaves_ = 0;
};

namespace {

void then(auto& acc, const auto& c) {
  acc.q += c.q;
  acc.nodes += c.nodes;
  acc.lookups += c.lookups;
  acc.leaves += c.leaves;
}

}  // namespace

ChromaticPipeline::ChromaticPipeline(const Graph& g, CountOptions opts, int cap) : g_(g), n_(g.order()) {
  if (n_ < 1) throw InputError("chromatic number needs at least one vertex");
  if (n_ > cap) {
    throw ResourceLimit("graph has " + std::to_string(n_) + " vertices, cap is " + std::to_string(cap));
  }
  depth_ = kDepth.floor_of(n_);
  if (depth_ >= 1) table_ = chi_table(g_, kDepth, opts);
  const std::size_t size = std::size_t{1} << n_;
  chr2_memo_.assign(size, Entry{});
  chr1a_memo_.assign(size, Entry{});
}

int ChromaticPipeline::table_chi(Mask s) const {
  if (s == 0) return 0;
  if (cardinality(s) > depth_ || !table_) throw std::out_of_range("subset is larger than the table depth");
  return table_->chi.at(s);
}

ChromaticPipeline::Entry ChromaticPipeline::chr2_entry(Mask s) {
  Entry& slot = chr2_memo_[s];
  if (slot.value >= 0) return slot;
  Entry e;
  e.value = cardinality(s);
  Loop loop;
  if (s != 0) {
    enum_mis(g_, s, [&](Mask t) {
      Cost it{1.0, 1, 0, 1};
      const Mask rest = s & ~t;
      if (cardinality(rest) <= depth_) {
        e.value = std::min(e.value, 1 + table_chi(rest));
        it.q += 1.0;
        it.nodes += 1;
        it.lookups += 1;
      }
      loop.add(it);
      return true;
    });
  }
  e.cost = loop.result();
  slot = e;
  return e;
}

ChromaticPipeline::Entry ChromaticPipeline::split_entry(Mask s, std::int64_t lo_num, std::int64_t lo_den,
                                                       std::int64_t hi_num, std::int64_t hi_den) {
  const std::int64_t size = cardinality(s);
  Entry e;
  e.value = static_cast<int>(size);
  Loop loop;
  for (Mask t = s;; t = (t - 1) & s) {
    const std::int64_t ts = cardinality(t);
    if (ts * lo_den >= lo_num * size && ts * hi_den <= hi_num * size) {
      const Entry a = chr2_entry(t);
      const Entry b = chr2_entry(s & ~t);
      e.value = std::min(e.value, a.value + b.value);
      Cost it;
      then(it, a.cost);
      then(it, b.cost);
      loop.add(it);
    }
    if (t == 0) break;
  }
  e.cost = loop.result();
  return e;
}

ChromaticPipeline::Entry ChromaticPipeline::chr1a_entry(Mask s) {
  Entry& slot = chr1a_memo_[s];
  if (slot.value >= 0) return slot;
  const Entry e = split_entry(s, 1, 2, 1, 1);
  chr1a_memo_[s] = e;
  return e;
}

ChromaticPipeline::Entry ChromaticPipeline::chr1b_entry(Mask s) { return split_entry(s, 3, 7, 4, 7); }

ChromaticPipeline::Entry ChromaticPipeline::col7_entry(Mask s) {
  const std::int64_t size = cardinality(s);
  if (size * 300 > std::int64_t{189} * n_) {
    throw InputError("7-colorability check needs |S| <= (7/3)·0.27·n");
  }
  Entry e;
  e.value = 0;
  Loop loop;
  for (Mask t = s;; t = (t - 1) & s) {
    if (cardinality(t) * std::int64_t{7} >= 3 * size) {
      std::uint64_t nodes = 0;
      const bool three = colorable(g_, t, 3, &nodes);
      Cost it{std::sqrt(static_cast<double>(nodes)), nodes, 0, 0};
      if (three) {
        const Entry rest = chr2_entry(s & ~t);
        then(it, rest.cost);
        if (rest.value <= 4) e.value = 1;
      }
      loop.add(it);
      if (e.value == 1) break;
    }
    if (t == 0) break;
  }
  e.cost = loop.result();
  return e;
}

ChromaticPipeline::Entry ChromaticPipeline::small_chi(Mask s) {
  Entry e;
  std::uint64_t total = 0;
  e.value = 7;
  for (int x = 0; x <= 6; ++x) {
    std::uint64_t nodes = 0;
    const bool ok = colorable(g_, s, x, &nodes);
    total += nodes;
    if (ok) {
      e.value = x;
      break;
    }
  }
  e.cost = Cost{std::sqrt(static_cast<double>(total)), total, 0, 0};
  return e;
}

int ChromaticPipeline::chr2(Mask s) { return chr2_entry(s).value; }
int ChromaticPipeline::chr1a(Mask s) { return chr1a_entry(s).value; }
int ChromaticPipeline::chr1b(Mask s) { return chr1b_entry(s).value; }
bool ChromaticPipeline::col7(Mask s) { return col7_entry(s).value == 1; }

ChromaticResult ChromaticPipeline::run() {
  ChromaticResult out;
  CaseTrace& tr = out.trace;
  tr.n = n_;
  tr.table_depth = depth_;
  const Threshold t048{"0.48n", 12, 25}, t052{"0.52n", 13, 25}, t0576{"0.576n", 72, 125},
      t6_13{"6n/13", 6, 13}, t7_13{"7n/13", 7, 13}, t48_91{"48n/91", 48, 91}, thalf{"0.5n", 1, 2};
  tr.thresholds = {t048, t052, t0576, t6_13, t7_13, t48_91, thalf};
  tr.cases[0].name = "1";
  tr.cases[1].name = "2";
  tr.cases[2].name = "3.1";
  tr.cases[3].name = "3.2";

  const Mask all = g_.vertices();
  int c = n_;
  std::array<Loop, 4> loops;
  auto record = [&](int idx, int value, const Cost& cost) {
    auto& cs = tr.cases[static_cast<std::size_t>(idx)];
    cs.activated = true;
    cs.best = cs.best ? std::min(*cs.best, value) : value;
    c = std::min(c, value);
    loops[static_cast<std::size_t>(idx)].add(cost);
  };

  for (Mask s = 0;; ++s) {
    const int size = cardinality(s);
    const Mask rest = all & ~s;
    const bool big = !t048.below(size, n_);  // 0.48n <= |S|
    if (big) {
      // Cases 1 and 2 share the coloring of S.
      const Entry col = small_chi(s);
      if (col.value <= 5) {
        ++tr.cases[0].subsets;
        const Entry r = chr1a_entry(rest);
        Cost it = col.cost;
        then(it, r.cost);
        record(0, col.value + r.value, it);
      } else {
        loops[0].add(col.cost);
      }
      if (t0576.below(size, n_)) {
        if (col.value <= 6) {
          ++tr.cases[1].subsets;
          const Entry r = chr1a_entry(rest);
          Cost it = col.cost;
          then(it, r.cost);
          record(1, 6 + r.value, it);
        } else {
          loops[1].add(col.cost);
        }
      }
    }
    if (!thalf.below(size, n_) && t7_13.below(size, n_)) {  // 0.5n <= |S| < 7n/13
      ++tr.cases[2].subsets;
      const Entry r = chr1a_entry(rest);
      Cost it;
      int left = 0;
      if (t48_91.below(size, n_)) {
        const Entry l = chr1a_entry(s);
        then(it, l.cost);
        left = l.value;
      } else {
        const Entry l = col7_entry(s);
        then(it, l.cost);
        left = l.value == 1 ? 7 : size;
      }
      then(it, r.cost);
      record(2, left + r.value, it);
    }
    if (!t6_13.below(size, n_) && thalf.below(size, n_)) {  // 6n/13 <= |S| < 0.5n
      ++tr.cases[3].subsets;
      const Entry l = chr1a_entry(s);
      const Entry r = chr1b_entry(rest);
      Cost it;
      then(it, l.cost);
      then(it, r.cost);
      record(3, l.value + r.value, it);
    }
    if (s == all) break;
  }

  out.chi = c;
  Cost total;
  for (const Loop& l : loops) then(total, l.result());
  out.cost.classical_nodes = total.nodes;
  out.cost.modeled_quantum_queries = total.q;
  out.cost.table_lookups = total.lookups;
  out.cost.enumerator_leaves = total.leaves;
  out.cost.table_entries = small_count(n_, kDepth);
  std::uint64_t evaluated = 0;
  for (const Entry& e : chr2_memo_) evaluated += e.value >= 0;
  for (const Entry& e : chr1a_memo_) evaluated += e.value >= 0;
  out.cost.evaluated_nodes = evaluated + (std::uint64_t{1} << n_);
  return out;
}

int chromatic_number(const Graph& g) { return chromatic_pipeline(g).chi; }

ChromaticResult chromatic_pipeline(const Graph& g, CountOptions opts, int cap) {
  ChromaticPipeline p(g, opts, cap);
  return p.run();
}

int chr1a(const Graph& g, Mask s) { return ChromaticPipeline(g).chr1a(s); }
int chr1b(const Graph& g, Mask s) { return ChromaticPipeline(g).chr1b(s); }
bool col7(const Graph& g, Mask s) { return ChromaticPipeline(g).col7(s); }

int balanced_prefix(const std::vector<int>& sizes, int t, int a) {
  if (sizes.empty()) throw InputError("balanced_prefix needs at least one part");
  if (t < 1) throw InputError("balanced_prefix needs t >= 1");
  std::int64_t total = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 0 || sizes[i] > t) throw InputError("part sizes must lie in [0, t]");
    if (i > 0 && sizes[i] > sizes[i - 1]) throw InputError("part sizes must be nonincreasing");
    total += sizes[i];
  }
  const std::int64_t p = (total + t - 1) / t;
  if (a < 1 || a > p - 2) throw InputError("balanced_prefix needs 1 <= a <= p - 2");
  // With r = total/p: prefix >= a·r  <=>  prefix·p >= a·total.
  std::int64_t prefix = 0;
  for (std::size_t k = 0; k <= sizes.size(); ++k) {
    if (prefix * p >= a * total) {
      if (prefix * p > (a + 1) * total) throw std::logic_error("no balanced prefix exists");
      return static_cast<int>(k);
    }
    if (k < sizes.size()) prefix += sizes[k];
  }
  throw std::logic_error("no balanced prefix exists");
}

}  // namespace exactpart
