#include "exactpart/dnc_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "exactpart/enumerate.hpp"

namespace exactpart {

std::string to_string(StrategyTag tag) {
  switch (tag) {
    case StrategyTag::divide_divide_enumerate: return "DivideDivideEnumerate";
    case StrategyTag::enumerate_then_divide: return "EnumerateThenDivide";
    case StrategyTag::third_level: return "ThirdLevel";
  }
  return "?";
}

StrategyTag parse_strategy(const std::string& s) {
  if (s == "dde" || s == "DivideDivideEnumerate") return StrategyTag::divide_divide_enumerate;
  if (s == "etd" || s == "EnumerateThenDivide") return StrategyTag::enumerate_then_divide;
  if (s == "third" || s == "ThirdLevel") return StrategyTag::third_level;
  throw InputError("unknown strategy: " + s);
}

void Strategy::validate() const {
  if (tag == StrategyTag::third_level) {
    if (alpha < Alpha(1303, 10000) || alpha >= Alpha(1, 4)) {
      throw InputError("ThirdLevel needs 0.1303 <= alpha < 1/4, got " + alpha.str());
    }
  } else if (alpha != Alpha(1, 4)) {
    throw InputError(to_string(tag) + " needs alpha = 1/4, got " + alpha.str());
  }
}

CostReport& CostReport::operator+=(const CostReport& o) {
  classical_nodes += o.classical_nodes;
  evaluated_nodes += o.evaluated_nodes;
  modeled_quantum_queries += o.modeled_quantum_queries;
  table_lookups += o.table_lookups;
  enumerator_leaves += o.enumerator_leaves;
  table_entries += o.table_entries;
  return *this;
}

// One search loop. Iterations are charged in quadrature, the loop itself
// costs one node.
class DncSolver::Loop {
 public:
  void add(const Res& r) {
    nodes_ += r.nodes;
    lookups_ += r.lookups;
    leaves_ += r.leaves;
    qsq_ += r.q * r.q;
    ok_ = ok_ || r.ok;
  }
  [[nodiscard]] bool ok() const noexcept { return ok_; }
  [[nodiscard]] Res result() const {
    Res r;
    r.ok = ok_;
    r.nodes = nodes_ + 1;
    r.lookups = lookups_;
    r.leaves = leaves_;
    r.q = std::max(1.0, std::sqrt(qsq_));
    return r;
  }

 private:
  bool ok_ = false;
  std::uint64_t nodes_ = 0;
  std::uint64_t lookups_ = 0;
  std::uint64_t leaves_ = 0;
  double qsq_ = 0.0;
};

namespace {

// Steps executed one after the other: costs add.
struct Seq {
  bool ok = true;
  std::uint64_t nodes = 0;
  std::uint64_t lookups = 0;
  std::uint64_t leaves = 0;
  double q = 0.0;

  template <class R>
  void then(const R& r) {
    ok = ok && r.ok;
    nodes += r.nodes;
    lookups += r.lookups;
    leaves += r.leaves;
    q += r.q;
  }
};

template <class R>
R to_res(const Seq& s) {
  R r;
  r.ok = s.ok;
  r.nodes = s.nodes;
  r.lookups = s.lookups;
  r.leaves = s.leaves;
  r.q = s.q;
  return r;
}

// Calls f(sub) for every sub ⊆ x with |sub| >= min_size until f returns true.
template <class F>
bool for_large_submasks(Mask x, int min_size, F&& f) {
  for (Mask sub = x;; sub = (sub - 1) & x) {
    if (cardinality(sub) >= min_size && f(sub)) return true;
    if (sub == 0) return false;
  }
}

}  // namespace

DncSolver::DncSolver(ImplicitFamily fam, ProblemKind kind, Strategy strategy, SolverOptions opts)
    : fam_(std::move(fam)), kind_(kind), strategy_(strategy), opts_(std::move(opts)) {
  strategy_.validate();
  n_ = fam_.universe.size();
  quarter_floor_ = n_ / 4;
  quarter_ceil_ = (n_ + 3) / 4;
  half_floor_ = n_ / 2;
  half_ceil_ = (n_ + 1) / 2;
  depth_ = strategy_.alpha.floor_of(n_);
  depth_ceil_ = strategy_.alpha.ceil_of(n_);
  if (kind_ == ProblemKind::cover && !fam_.member_down) throw InputError("cover needs member_down");
  if (kind_ != ProblemKind::cover && !fam_.member) throw InputError("partition and packing need member");
  if (opts_.table) {
    if (opts_.table->alpha() != strategy_.alpha) throw InputError("table alpha does not match the strategy");
    if (opts_.table->kind() != kind_) throw InputError("table kind does not match the problem");
    if (opts_.table->n() != n_) throw InputError("table universe does not match the family");
    table_ = opts_.table;
  }
}

void DncSolver::ensure_table(int k) {
  if (table_ && table_->k_max() >= k) return;
  if (opts_.table) throw InputError("prebuilt table has k_max below the requested k");
  CountOptions co = opts_.counts;
  co.keep_counts = false;
  table_ = std::make_shared<const CountTable>(
      build_counts(kind_, fam_, strategy_.alpha, std::max(k, std::max(n_, 1)), co));
}

const CountTable& DncSolver::full_table(int k) {
  if (!full_ || full_->k_max() < k) {
    CountOptions co = opts_.counts;
    co.keep_counts = false;
    full_ = std::make_shared<const CountTable>(
        build_counts(kind_, fam_, Alpha(1, 1), std::max(k, std::max(n_, 1)), co));
  }
  return *full_;
}

const std::vector<Mask>& DncSolver::candidates(Mask x) {
  auto it = cand_cache_.find(x);
  if (it != cand_cache_.end()) return it->second;
  std::vector<Mask> out;
  if (fam_.candidates) {
    (*fam_.candidates)(x, kind_, [&](Mask s) {
      out.push_back(s);
      return true;
    });
  } else {
    const auto& pred = kind_ == ProblemKind::cover ? fam_.member_down : fam_.member;
    for (Mask s = x;; s = (s - 1) & x) {
      if (pred(s)) out.push_back(s);
      if (s == 0) break;
    }
  }
  return cand_cache_.emplace(x, std::move(out)).first->second;
}

bool DncSolver::base(Mask x) const { return kind_ == ProblemKind::packing || x == 0; }

// One enumeration step removes `taken` from the current subset and spends
// `spent` members. Packings may also drop a single uncovered element for free.
std::vector<DncSolver::Step> DncSolver::steps(Mask x) {
  std::vector<Step> out;
  for (Mask s : candidates(x)) out.push_back({s, 1});
  if (kind_ == ProblemKind::packing) {
    for (Mask rest = x; rest != 0; rest &= rest - 1) out.push_back({rest & (~rest + 1), 0});
  }
  return out;
}

template <class F>
DncSolver::Res DncSolver::memo(Level level, Mask x, int j, F&& compute) {
  const std::uint64_t key =
      (static_cast<std::uint64_t>(level) << 48) | (static_cast<std::uint64_t>(j) << 32) | x;
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  ++evaluated_;
  const Res r = compute();
  memo_.emplace(key, r);
  return r;
}

DncSolver::Res DncSolver::lookup(Mask x, int j) {
  Res r;
  r.ok = table_->decision(x, j);
  r.nodes = 1;
  r.lookups = 1;
  r.q = 1.0;
  return r;
}

DncSolver::Res DncSolver::small(Mask x, int j) {
  if (cardinality(x) <= depth_) return lookup(x, j);
  if (strategy_.tag != StrategyTag::third_level || cardinality(x) > quarter_floor_) {
    throw std::logic_error("small-instance check called on a large subset");
  }
  return third(x, j);
}

// Splits x into (xl, x∖xl) with |xl| >= min_left and j into jl + jr with
// jl >= 1, then solves both sides with leaf().
DncSolver::Res DncSolver::split_pair(Mask x, int j, int min_left) {
  Loop loop;
  for_large_submasks(x, min_left, [&](Mask xl) {
    for (int jl = min_split(); jl <= j; ++jl) {
      ++evaluated_;
      Seq body;
      body.then(leaf(xl, jl));
      if (body.ok) body.then(leaf(x & ~xl, j - jl));
      loop.add(to_res<Res>(body));
      if (loop.ok()) return true;
    }
    return false;
  });
  return loop.result();
}

DncSolver::Res DncSolver::half(Mask x, int j) {
  if (j == 0 || cardinality(x) <= quarter_floor_) {
    Res r = j == 0 ? Res{base(x), 1, 0, 0, 1.0} : small(x, j);
    return r;
  }
  return memo(Level::half, x, j, [&] { return split_pair(x, j, quarter_ceil_); });
}

DncSolver::Res DncSolver::leaf(Mask x, int j) {
  if (j == 0) return Res{base(x), 1, 0, 0, 1.0};
  if (cardinality(x) <= quarter_floor_) return small(x, j);
  return memo(Level::leaf, x, j, [&] {
    Loop loop;
    for (const Step& st : steps(x)) {
      ++evaluated_;
      const Mask rest = x & ~st.taken;
      const int jr = j - st.spent;
      Res body{false, 1, 0, 1, 1.0};
      if (cardinality(rest) <= quarter_floor_) {
        const Res sub = jr == 0 ? Res{base(rest), 1, 0, 0, 1.0} : small(rest, jr);
        body = Res{sub.ok, sub.nodes + 1, sub.lookups, sub.leaves + 1, sub.q + 1.0};
      }
      loop.add(body);
      if (loop.ok()) break;
    }
    return loop.result();
  });
}

DncSolver::Res DncSolver::left(Mask x, int j) {
  if (j == 0) return Res{base(x), 1, 0, 0, 1.0};
  return memo(Level::left, x, j, [&] {
    Loop loop;
    for (const Step& st : steps(x)) {
      ++evaluated_;
      const Mask rest = x & ~st.taken;
      Res body{false, 1, 0, 1, 1.0};
      if (cardinality(rest) <= half_floor_) {
        const Res sub = half(rest, j - st.spent);
        body = Res{sub.ok, sub.nodes + 1, sub.lookups, sub.leaves + 1, sub.q + 1.0};
      }
      loop.add(body);
      if (loop.ok()) break;
    }
    return loop.result();
  });
}

DncSolver::Res DncSolver::third(Mask x, int j) {
  if (j == 0) return Res{base(x), 1, 0, 0, 1.0};
  if (cardinality(x) <= depth_) return lookup(x, j);
  return memo(Level::third, x, j, [&] {
    Loop outer;
    for_large_submasks(x, depth_ceil_, [&](Mask xl) {
      const Mask xr = x & ~xl;
      for (int jl = min_split(); jl <= j; ++jl) {
        Loop inner;
        for (const Step& st : steps(xl)) {
          if (st.spent > jl) continue;
          ++evaluated_;
          const Mask rest = xl & ~st.taken;
          Res body{false, 1, 0, 1, 1.0};
          if (cardinality(rest) <= depth_) {
            Seq seq;
            seq.then(lookup(rest, jl - st.spent));
            if (seq.ok) seq.then(j - jl == 0 ? Res{base(xr), 1, 0, 0, 1.0} : small(xr, j - jl));
            body = to_res<Res>(seq);
            body.nodes += 1;
            body.leaves += 1;
            body.q += 1.0;
          }
          inner.add(body);
          if (inner.ok()) break;
        }
        outer.add(inner.result());
        if (outer.ok()) return true;
      }
      return false;
    });
    return outer.result();
  });
}

DncSolver::Res DncSolver::top(int k) {
  const Mask all = fam_.universe.all();
  Loop loop;
  for_large_submasks(all, half_ceil_, [&](Mask l) {
    const Mask r = all & ~l;
    for (int kl = min_split(); kl <= k; ++kl) {
      ++evaluated_;
      Seq body;
      body.then(strategy_.tag == StrategyTag::divide_divide_enumerate ? half(l, kl) : left(l, kl));
      if (body.ok) body.then(half(r, k - kl));
      loop.add(to_res<Res>(body));
      if (loop.ok()) return true;
    }
    return false;
  });
  return loop.result();
}

SolveResult DncSolver::solve(int k) {
  if (k < 1) throw InputError("k must be at least 1");
  ensure_table(k);
  const std::uint64_t before = evaluated_;
  const Res r = top(k);
  SolveResult out;
  out.sat = r.ok;
  out.cost.classical_nodes = r.nodes;
  out.cost.evaluated_nodes = evaluated_ - before;
  out.cost.modeled_quantum_queries = r.q;
  out.cost.table_lookups = r.lookups;
  out.cost.enumerator_leaves = r.leaves;
  out.cost.table_entries = table_->index().size() * static_cast<std::uint64_t>(table_->k_max() + 1);
  return out;
}

std::optional<std::vector<Mask>> DncSolver::witness(int k) {
  if (k < 1) throw InputError("k must be at least 1");
  const CountTable& full = full_table(k);
  Mask x = fam_.universe.all();
  if (!full.decision(x, k)) return std::nullopt;
  std::vector<Mask> parts;
  for (int j = k; j >= 1; --j) {
    bool found = false;
    for (Mask s : candidates(x)) {
      if (full.decision(x & ~s, j - 1)) {
        parts.push_back(s);
        x &= ~s;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("witness peeling found no candidate");
  }
  if (kind_ == ProblemKind::cover) {
    // Grow each member greedily inside F↓; the union stays the universe.
    for (Mask& s : parts) {
      for (int v = 0; v < n_; ++v) {
        const Mask bigger = s | (Mask{1} << v);
        if (bigger != s && fam_.member_down(bigger)) s = bigger;
      }
    }
  }
  if (!is_valid_solution(fam_, kind_, parts)) throw std::logic_error("witness failed validation");
  return parts;
}

bool DncSolver::ksplit_check(int k, Mask left_set, std::optional<int> x) {
  if (k < 2) throw InputError("ksplit_check needs k >= 2");
  if (!fam_.universe.valid(left_set)) throw InputError("L is not inside the universe");
  const CountTable& full = full_table(k);
  const Mask right = fam_.universe.all() & ~left_set;
  if (!x) {
    for (int kl = 1; kl < k; ++kl)
      if (full.decision(left_set, kl) && full.decision(right, k - kl)) return true;
    return false;
  }
  const int min_size = cardinality(left_set) - *x;
  ImplicitFamily big = fam_;
  big.candidates.reset();
  if (fam_.member) big.member = [m = fam_.member, min_size](Mask s) { return cardinality(s) >= min_size && m(s); };
  if (fam_.member_down) {
    big.member_down = [m = fam_.member_down, min_size](Mask s) { return cardinality(s) >= min_size && m(s); };
  }
  CountOptions co = opts_.counts;
  co.keep_counts = false;
  const CountTable restricted = build_counts(kind_, big, Alpha(1, 1), k, co);
  for (int kl = 1; kl < k; ++kl)
    if (restricted.decision(left_set, kl) && full.decision(right, k - kl)) return true;
  return false;
}

bool is_valid_solution(const ImplicitFamily& fam, ProblemKind kind, const std::vector<Mask>& parts) {
  const Mask all = fam.universe.all();
  Mask seen = 0;
  for (Mask s : parts) {
    if (!fam.universe.valid(s)) return false;
    if (kind == ProblemKind::cover) {
      if (!fam.member_down(s)) return false;
    } else {
      if (!fam.member(s)) return false;
      if ((seen & s) != 0) return false;
    }
    seen |= s;
  }
  return kind == ProblemKind::packing || seen == all;
}

ImplicitFamily dominating_family(const Graph& g) {
  auto graph = std::make_shared<const Graph>(g);
  ImplicitFamily fam{Universe(g.order()), [graph](Mask s) { return graph->dominates(s); },
                     [](Mask) { return true; }, FamilyKind::closed_neighborhood_system, std::nullopt};
  fam.candidates = [graph](Mask x, ProblemKind, const CandidateVisitor& visit) {
    enum_min_dom_in(*graph, x, visit);
  };
  return fam;
}

DomaticResult domatic_number(const Graph& g, Strategy strategy) {
  DncSolver solver(dominating_family(g), ProblemKind::packing, strategy);
  DomaticResult out;
  int min_degree = g.order();
  for (int v = 0; v < g.order(); ++v) min_degree = std::min(min_degree, cardinality(g.open_nbhd(v)));
  for (int k = 1; k <= min_degree + 1; ++k) {
    const SolveResult r = solver.solve(k);
    out.cost += r.cost;
    if (!r.sat) break;
    out.domatic = k;
  }
  auto classes = solver.witness(out.domatic);
  if (!classes) throw std::logic_error("domatic witness missing");
  Mask used = 0;
  for (Mask c : *classes) used |= c;
  (*classes)[0] |= g.vertices() & ~used;  // leftovers keep the first class dominating
  out.classes = std::move(*classes);
  return out;
}

}  // namespace exactpart
