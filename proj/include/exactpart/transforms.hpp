#pragma once

// α-small zeta, Möbius and odd-negation transforms over a coefficient ring.
//
// A SmallTable holds one ring value per subset X with |X| <= floor(α·n).
// Transforms follow Yates's pass structure: the element loop is outermost and
// every pass updates g(X) from g(X \ {v}) in place.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "exactpart/setsys.hpp"

namespace exactpart {

using Integer = boost::multiprecision::cpp_int;

// Exact rational in [0, 1].
class Alpha {
 public:
  Alpha(std::int64_t num, std::int64_t den);
  // Accepts "1/4", "0.27", "1".
  static Alpha parse(const std::string& text);

  [[nodiscard]] std::int64_t num() const noexcept { return num_; }
  [[nodiscard]] std::int64_t den() const noexcept { return den_; }
  [[nodiscard]] double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  // floor(α·n) and ceil(α·n).
  [[nodiscard]] int floor_of(int n) const noexcept;
  [[nodiscard]] int ceil_of(int n) const noexcept;
  [[nodiscard]] std::string str() const;

  friend bool operator==(const Alpha& a, const Alpha& b) noexcept {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }
  friend std::strong_ordering operator<=>(const Alpha& a, const Alpha& b) noexcept {
    return a.num_ * b.den_ <=> b.num_ * a.den_;
  }

 private:
  std::int64_t num_;
  std::int64_t den_;
};

// s(n, α) = Σ_{i <= floor(αn)} C(n, i).
[[nodiscard]] std::uint64_t small_count(int n, const Alpha& alpha);

// Integers modulo the Mersenne prime 2^61 − 1. A zero residue does not prove
// a zero count, so decisions taken in this ring can err towards "false".
class ModP {
 public:
  static constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

  ModP() = default;
  explicit ModP(std::int64_t v);
  static ModP from_integer(const Integer& v);

  [[nodiscard]] std::uint64_t value() const noexcept { return v_; }

  ModP& operator+=(const ModP& o) noexcept;
  ModP& operator-=(const ModP& o) noexcept;
  ModP& operator*=(const ModP& o) noexcept;
  friend ModP operator+(ModP a, const ModP& b) noexcept { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) noexcept { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) noexcept { return a *= b; }
  ModP operator-() const noexcept { return ModP() - *this; }
  friend bool operator==(const ModP&, const ModP&) = default;

 private:
  std::uint64_t v_ = 0;
};

template <class C>
[[nodiscard]] C ring_cast(const Integer& v);
template <>
inline Integer ring_cast<Integer>(const Integer& v) { return v; }
template <>
inline ModP ring_cast<ModP>(const Integer& v) { return ModP::from_integer(v); }

std::ostream& operator<<(std::ostream& os, const ModP& v);

// Σ c_j z^j truncated above `cap`. Only the coefficients up to the largest
// |X| in a table are ever read, so a table at depth α truncates at floor(α·n).
template <class C>
class Poly {
 public:
  Poly() = default;
  explicit Poly(int cap) : cap_(cap) {}
  Poly(int cap, std::vector<C> coeffs) : cap_(cap), c_(std::move(coeffs)) {
    if (c_.size() > static_cast<std::size_t>(cap_ + 1)) c_.resize(static_cast<std::size_t>(cap_ + 1));
    trim();
  }

  static Poly monomial(int cap, int degree, const C& coeff) {
    Poly p(cap);
    if (degree <= cap && !(coeff == C{})) {
      p.c_.assign(static_cast<std::size_t>(degree + 1), C{});
      p.c_.back() = coeff;
    }
    return p;
  }

  // (1 + z)^e truncated at cap.
  static Poly one_plus_z_pow(int cap, int e) {
    std::vector<C> c;
    Integer binom = 1;
    for (int j = 0; j <= std::min(cap, e); ++j) {
      c.push_back(ring_cast<C>(binom));
      binom = binom * (e - j) / (j + 1);
    }
    return Poly(cap, std::move(c));
  }

  [[nodiscard]] int cap() const noexcept { return cap_; }
  [[nodiscard]] C coeff(int degree) const {
    if (degree < 0 || static_cast<std::size_t>(degree) >= c_.size()) return C{};
    return c_[static_cast<std::size_t>(degree)];
  }
  [[nodiscard]] const std::vector<C>& coeffs() const noexcept { return c_; }

  [[nodiscard]] std::string str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = 0; j < c_.size(); ++j) {
      if (c_[j] == C{}) continue;
      if (!first) os << " + ";
      first = false;
      os << c_[j];
      if (j == 1) os << "z";
      if (j > 1) os << "z^" << j;
    }
    return os.str();
  }

  Poly& operator+=(const Poly& o) {
    cap_ = std::max(cap_, o.cap_);
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (std::size_t j = 0; j < o.c_.size(); ++j) c_[j] += o.c_[j];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    cap_ = std::max(cap_, o.cap_);
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (std::size_t j = 0; j < o.c_.size(); ++j) c_[j] -= o.c_[j];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  // Schoolbook convolution, truncated at the larger cap.
  friend Poly operator*(const Poly& a, const Poly& b) {
    const int cap = std::max(a.cap_, b.cap_);
    if (a.c_.empty() || b.c_.empty()) return Poly(cap);
    const std::size_t len = std::min(a.c_.size() + b.c_.size() - 1, static_cast<std::size_t>(cap + 1));
    std::vector<C> c(len);
    for (std::size_t i = 0; i < a.c_.size() && i < len; ++i) {
      if (a.c_[i] == C{}) continue;
      for (std::size_t j = 0; j < b.c_.size() && i + j < len; ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(cap, std::move(c));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly operator-() const {
    Poly p = *this;
    for (auto& x : p.c_) x = -x;
    return p;
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == C{}) c_.pop_back();
  }

  int cap_ = 0;
  std::vector<C> c_;  // no trailing zeros
};

using ZPolynomial = Poly<Integer>;
using ModPolynomial = Poly<ModP>;

// The α-small subsets of an n-element universe, by nondecreasing cardinality.
class SmallIndex {
 public:
  SmallIndex(int n, Alpha alpha);

  [[nodiscard]] int n() const noexcept { return n_; }
  [[nodiscard]] const Alpha& alpha() const noexcept { return alpha_; }
  [[nodiscard]] int limit() const noexcept { return limit_; }
  [[nodiscard]] bool is_small(Mask x) const noexcept {
    return is_subset(x, full_mask(n_)) && cardinality(x) <= limit_;
  }
  [[nodiscard]] const std::vector<Mask>& masks() const noexcept { return masks_; }
  [[nodiscard]] std::size_t size() const noexcept { return masks_.size(); }
  [[nodiscard]] bool dense() const noexcept { return n_ <= kDenseLimit; }

  static constexpr int kDenseLimit = 24;

 private:
  int n_;
  Alpha alpha_;
  int limit_;
  std::vector<Mask> masks_;
};

class IncompleteTable : public std::logic_error {
 public:
  IncompleteTable() : std::logic_error("incomplete table") {}
};

template <class R>
class SmallTable {
 public:
  explicit SmallTable(std::shared_ptr<const SmallIndex> index) : index_(std::move(index)) {
    if (index_->dense()) {
      dense_.resize(std::size_t{1} << index_->n());
      present_.assign(std::size_t{1} << index_->n(), false);
    }
  }
  SmallTable(int n, Alpha alpha) : SmallTable(std::make_shared<const SmallIndex>(n, alpha)) {}

  [[nodiscard]] const SmallIndex& index() const noexcept { return *index_; }
  [[nodiscard]] std::shared_ptr<const SmallIndex> shared_index() const noexcept { return index_; }
  [[nodiscard]] int n() const noexcept { return index_->n(); }

  [[nodiscard]] bool defined(Mask x) const {
    if (!index_->is_small(x)) return false;
    return index_->dense() ? present_[x] : sparse_.count(x) != 0;
  }

  void set(Mask x, R value) {
    if (!index_->is_small(x)) throw InputError("subset is not alpha-small");
    if (index_->dense()) {
      dense_[x] = std::move(value);
      present_[x] = true;
    } else {
      sparse_[x] = std::move(value);
    }
  }

  [[nodiscard]] const R& at(Mask x) const {
    if (!defined(x)) throw IncompleteTable();
    return index_->dense() ? dense_[x] : sparse_.at(x);
  }

  // Unchecked access for transform passes.
  R& slot(Mask x) { return index_->dense() ? dense_[x] : sparse_[x]; }
  [[nodiscard]] const R& slot(Mask x) const { return index_->dense() ? dense_[x] : sparse_.at(x); }

  [[nodiscard]] bool complete() const {
    for (Mask x : index_->masks())
      if (!defined(x)) return false;
    return true;
  }

  // Entry updates performed by the most recent transform applied to this table.
  [[nodiscard]] std::uint64_t touched_counter() const noexcept { return touched_; }
  void set_touched(std::uint64_t t) noexcept { touched_ = t; }

 private:
  std::shared_ptr<const SmallIndex> index_;
  std::vector<R> dense_;
  std::vector<bool> present_;
  std::unordered_map<Mask, R> sparse_;
  std::uint64_t touched_ = 0;
};

namespace detail {

template <class R>
std::uint64_t sigma_pass(SmallTable<R>& t) {
  std::uint64_t touched = 0;
  for (Mask x : t.index().masks()) {
    if (cardinality(x) % 2 == 1) {
      R& v = t.slot(x);
      v = -v;
      ++touched;
    }
  }
  return touched;
}

template <class R>
std::uint64_t zeta_pass(SmallTable<R>& t) {
  std::uint64_t touched = 0;
  const auto& masks = t.index().masks();
  for (int v = 0; v < t.n(); ++v) {
    const Mask bit = Mask{1} << v;
    for (Mask x : masks) {
      if ((x & bit) == 0) continue;
      t.slot(x) += t.slot(x ^ bit);
      ++touched;
    }
  }
  return touched;
}

}  // namespace detail

// Every α-small entry must be defined, otherwise IncompleteTable is thrown.
template <class R>
SmallTable<R> sigma_small(SmallTable<R> f) {
  if (!f.complete()) throw IncompleteTable();
  f.set_touched(detail::sigma_pass(f));
  return f;
}

template <class R>
SmallTable<R> zeta_small(SmallTable<R> f) {
  if (!f.complete()) throw IncompleteTable();
  f.set_touched(detail::zeta_pass(f));
  return f;
}

// µ_α = σ_α ζ_α σ_α.
template <class R>
SmallTable<R> mobius_small(SmallTable<R> f) {
  if (!f.complete()) throw IncompleteTable();
  std::uint64_t touched = detail::sigma_pass(f);
  touched += detail::zeta_pass(f);
  touched += detail::sigma_pass(f);
  f.set_touched(touched);
  return f;
}

// Reduce an exact table into the modular ring.
[[nodiscard]] SmallTable<ModP> reduce(const SmallTable<Integer>& t);

}  // namespace exactpart
