#include "exactpart/ie_counts.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace exactpart {

namespace {

std::shared_ptr<const SmallIndex> make_index(const ImplicitFamily& fam, Alpha alpha) {
  return std::make_shared<const SmallIndex>(fam.universe.size(), alpha);
}

template <class C>
SmallTable<C> down_indicator(const ImplicitFamily& fam, std::shared_ptr<const SmallIndex> index) {
  if (!fam.member_down) throw InputError("family lacks a downward-closure oracle");
  SmallTable<C> t(std::move(index));
  for (Mask y : t.index().masks()) t.set(y, fam.member_down(y) ? ring_cast<C>(1) : C{});
  return t;
}

template <class C>
SmallTable<Poly<C>> size_weighted(const ImplicitFamily& fam, std::shared_ptr<const SmallIndex> index) {
  if (!fam.member) throw InputError("family lacks a membership oracle");
  SmallTable<Poly<C>> t(std::move(index));
  const int cap = t.index().limit();
  for (Mask y : t.index().masks()) {
    t.set(y, fam.member(y) ? Poly<C>::monomial(cap, cardinality(y), ring_cast<C>(1)) : Poly<C>(cap));
  }
  return t;
}

template <class V>
V one_like(const V&) {
  return ring_cast<V>(1);
}
template <class C>
Poly<C> one_like(const Poly<C>& p) {
  return Poly<C>::monomial(p.cap(), 0, ring_cast<C>(1));
}

template <class V>
V power(const V& base, int k) {
  V result = one_like(base);
  V b = base;
  for (int e = k; e > 0; e >>= 1) {
    if (e & 1) result = result * b;
    if (e > 1) b = b * b;
  }
  return result;
}

template <class C>
const C& extract(const C& v, int) {
  return v;
}
template <class C>
C extract(const Poly<C>& p, int degree) {
  return p.coeff(degree);
}

// Fills decisions (and counts, for exact scalars) for k in [k_lo, k_hi].
template <class V>
void fill_range(CountTable& out, const SmallTable<V>& base, const SmallTable<V>* factor, int k_lo,
                int k_hi, bool keep_counts) {
  const auto& masks = base.index().masks();
  SmallTable<V> pw(base.shared_index());
  for (Mask y : masks) pw.set(y, power(base.at(y), k_lo));
  for (int k = k_lo; k <= k_hi; ++k) {
    if (k > k_lo) {
      for (Mask y : masks) pw.slot(y) = pw.slot(y) * base.at(y);
    }
    SmallTable<V> f = pw;
    if (factor != nullptr) {
      for (Mask y : masks) f.slot(y) = factor->at(y) * f.slot(y);
    }
    const SmallTable<V> m = mobius_small(std::move(f));
    using C = std::decay_t<decltype(extract(m.at(0), 0))>;
    std::unique_ptr<SmallTable<Integer>> counts;
    if constexpr (std::is_same_v<C, Integer>) {
      if (keep_counts) counts = std::make_unique<SmallTable<Integer>>(base.shared_index());
    }
    for (Mask x : masks) {
      const C value = extract(m.at(x), cardinality(x));
      if constexpr (std::is_same_v<C, Integer>) {
        if (value < 0) throw std::logic_error("negative count");
        out.store(x, k, value != 0);
        if (counts) counts->set(x, value);
      } else {
        out.store(x, k, !(value == C{}));
      }
    }
    if (counts) out.store_counts(k, std::move(*counts));
  }
}

template <class V>
void fill_all(CountTable& out, const SmallTable<V>& base, const SmallTable<V>* factor, int k_max,
              const CountOptions& opts) {
  const bool keep = opts.keep_counts && opts.arithmetic == Arithmetic::exact;
  const int workers = std::max(1, std::min(opts.threads, k_max + 1));
  if (workers == 1) {
    fill_range(out, base, factor, 0, k_max, keep);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  const int total = k_max + 1;
  for (int w = 0; w < workers; ++w) {
    const int lo = w * total / workers;
    const int hi = (w + 1) * total / workers - 1;
    pool.emplace_back([&, w, lo, hi] {
      try {
        fill_range(out, base, factor, lo, hi, keep);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void check_k(int k_max) {
  if (k_max < 1) throw InputError("k_max must be at least 1");
}

template <class C>
void fill_cover(CountTable& out, const ImplicitFamily& fam, std::shared_ptr<const SmallIndex> index,
                int k_max, const CountOptions& opts) {
  const SmallTable<C> a = zeta_small(down_indicator<C>(fam, std::move(index)));
  fill_all<C>(out, a, nullptr, k_max, opts);
}

template <class C>
void fill_poly(CountTable& out, const ImplicitFamily& fam, std::shared_ptr<const SmallIndex> index,
               int k_max, bool packing, const CountOptions& opts) {
  const SmallTable<Poly<C>> p = zeta_small(size_weighted<C>(fam, index));
  if (!packing) {
    fill_all<Poly<C>>(out, p, nullptr, k_max, opts);
    return;
  }
  SmallTable<Poly<C>> lift(index);
  for (Mask y : index->masks()) lift.set(y, Poly<C>::one_plus_z_pow(index->limit(), cardinality(y)));
  fill_all(out, p, &lift, k_max, opts);
}

}  // namespace

SmallTable<Integer> a_table(const ImplicitFamily& fam, Alpha alpha) {
  return zeta_small(down_indicator<Integer>(fam, make_index(fam, alpha)));
}

SmallTable<ZPolynomial> aj_polys(const ImplicitFamily& fam, Alpha alpha) {
  return zeta_small(size_weighted<Integer>(fam, make_index(fam, alpha)));
}

CountTable::CountTable(std::shared_ptr<const SmallIndex> index, ProblemKind kind, int k_max,
                       bool has_counts)
    : index_(std::move(index)), kind_(kind), k_max_(k_max), has_counts_(has_counts) {
  const auto slots = static_cast<std::size_t>(k_max + 1);
  if (index_->dense()) {
    dense_.assign(slots, std::vector<bool>(std::size_t{1} << index_->n(), false));
  } else {
    sparse_.resize(slots);
  }
  counts_.resize(slots);
}

void CountTable::check(Mask x, int k) const {
  if (k < 0 || k > k_max_) throw std::out_of_range("k outside the table");
  if (!index_->is_small(x)) throw std::out_of_range("subset outside the table");
}

const Integer& CountTable::count(Mask x, int k) const {
  check(x, k);
  const auto& t = counts_[static_cast<std::size_t>(k)];
  if (!t) throw std::logic_error("table was built without counts");
  return t->at(x);
}

bool CountTable::decision(Mask x, int k) const {
  check(x, k);
  const auto slot = static_cast<std::size_t>(k);
  return index_->dense() ? dense_[slot][x] : sparse_[slot].count(x) != 0;
}

void CountTable::store(Mask x, int k, bool decision) {
  const auto slot = static_cast<std::size_t>(k);
  if (index_->dense()) {
    dense_[slot][x] = decision;
  } else if (decision) {
    sparse_[slot].insert(x);
  }
}

void CountTable::store_counts(int k, SmallTable<Integer> counts) {
  counts_[static_cast<std::size_t>(k)] = std::make_unique<SmallTable<Integer>>(std::move(counts));
}

void CountTable::dump(std::ostream& os) const {
  for (Mask x : index_->masks()) {
    for (int k = 0; k <= k_max_; ++k) {
      unsigned char buf[11];
      const std::uint64_t m = x;
      for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(m >> (8 * i));
      buf[8] = static_cast<unsigned char>(k & 0xff);
      buf[9] = static_cast<unsigned char>((k >> 8) & 0xff);
      buf[10] = decision(x, k) ? 1 : 0;
      os.write(reinterpret_cast<const char*>(buf), sizeof buf);
    }
  }
}

std::vector<CountTable::DumpRecord> CountTable::read_dump(std::istream& is) {
  std::vector<DumpRecord> out;
  unsigned char buf[11];
  while (is.read(reinterpret_cast<char*>(buf), sizeof buf)) {
    DumpRecord r{0, 0, 0};
    for (int i = 0; i < 8; ++i) r.mask |= std::uint64_t{buf[i]} << (8 * i);
    r.k = static_cast<std::uint16_t>(buf[8] | (buf[9] << 8));
    r.flag = buf[10];
    out.push_back(r);
  }
  if (is.gcount() != 0) throw InputError("truncated table dump");
  return out;
}

CountTable cover_counts(const ImplicitFamily& fam, Alpha alpha, int k_max, const CountOptions& opts) {
  check_k(k_max);
  auto index = make_index(fam, alpha);
  const bool exact = opts.arithmetic == Arithmetic::exact;
  CountTable out(index, ProblemKind::cover, k_max, exact && opts.keep_counts);
  if (exact) {
    fill_cover<Integer>(out, fam, index, k_max, opts);
  } else {
    fill_cover<ModP>(out, fam, index, k_max, opts);
  }
  return out;
}

namespace {

CountTable poly_counts(ProblemKind kind, const ImplicitFamily& fam, Alpha alpha, int k_max,
                       const CountOptions& opts) {
  check_k(k_max);
  auto index = make_index(fam, alpha);
  const bool exact = opts.arithmetic == Arithmetic::exact;
  const bool packing = kind == ProblemKind::packing;
  CountTable out(index, kind, k_max, exact && opts.keep_counts);
  if (exact) {
    fill_poly<Integer>(out, fam, index, k_max, packing, opts);
  } else {
    fill_poly<ModP>(out, fam, index, k_max, packing, opts);
  }
  return out;
}

}  // namespace

CountTable partition_counts(const ImplicitFamily& fam, Alpha alpha, int k_max, const CountOptions& opts) {
  return poly_counts(ProblemKind::partition, fam, alpha, k_max, opts);
}

CountTable packing_counts(const ImplicitFamily& fam, Alpha alpha, int k_max, const CountOptions& opts) {
  return poly_counts(ProblemKind::packing, fam, alpha, k_max, opts);
}

CountTable build_counts(ProblemKind kind, const ImplicitFamily& fam, Alpha alpha, int k_max,
                        const CountOptions& opts) {
  switch (kind) {
    case ProblemKind::cover: return cover_counts(fam, alpha, k_max, opts);
    case ProblemKind::partition: return partition_counts(fam, alpha, k_max, opts);
    case ProblemKind::packing: return packing_counts(fam, alpha, k_max, opts);
  }
  throw std::logic_error("unknown problem kind");
}

ChiTable chi_table(const Graph& g, Alpha alpha, const CountOptions& opts) {
  const int n = g.order();
  if (alpha.num() * n < alpha.den()) throw InputError("chi table needs alpha * n >= 1");
  const ImplicitFamily fam = independent_family(g);
  CountOptions o = opts;
  o.keep_counts = false;
  const CountTable covers = cover_counts(fam, alpha, alpha.floor_of(n), o);

  auto index = std::make_shared<const SmallIndex>(n, alpha);
  ChiTable out{SmallTable<int>(index), SmallTable<Integer>(index)};
  for (Mask s : index->masks()) {
    int k = 0;
    while (!covers.decision(s, k)) ++k;  // χ(S) <= |S| <= floor(αn) = k_max
    out.chi.set(s, k);
  }
  // Masks come by nondecreasing size, so both S∖{v} and S∖N[v] are ready.
  out.nonempty_independent.set(0, Integer(0));
  for (Mask s : index->masks()) {
    if (s == 0) continue;
    const int v = std::countr_zero(s);
    out.nonempty_independent.set(s, out.nonempty_independent.at(s & ~(Mask{1} << v)) +
                                        out.nonempty_independent.at(s & ~g.closed_nbhd(v)) + 1);
  }
  return out;
}

}  // namespace exactpart
