#include "exactpart/transforms.hpp"

#include <charconv>
#include <numeric>

namespace exactpart {

Alpha::Alpha(std::int64_t num, std::int64_t den) {
  if (den <= 0 || num < 0 || num > den) throw InputError("alpha must be a rational in [0, 1]");
  const std::int64_t g = std::gcd(num, den);
  num_ = g == 0 ? 0 : num / g;
  den_ = g == 0 ? 1 : den / g;
}

Alpha Alpha::parse(const std::string& text) {
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw InputError("malformed alpha: " + text);
    }
    return v;
  };
  const std::string_view s(text);
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    return Alpha(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
  }
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = s.substr(0, dot);
    const std::string_view frac = s.substr(dot + 1);
    if (frac.size() > 12) throw InputError("alpha has too many decimals: " + text);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::int64_t w = whole.empty() ? 0 : parse_int(whole);
    const std::int64_t f = frac.empty() ? 0 : parse_int(frac);
    return Alpha(w * den + f, den);
  }
  return Alpha(parse_int(s), 1);
}

int Alpha::floor_of(int n) const noexcept { return static_cast<int>((num_ * n) / den_); }

int Alpha::ceil_of(int n) const noexcept { return static_cast<int>((num_ * n + den_ - 1) / den_); }

std::string Alpha::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::uint64_t small_count(int n, const Alpha& alpha) {
  const int limit = alpha.floor_of(n);
  std::uint64_t total = 0;
  std::uint64_t binom = 1;
  for (int i = 0; i <= limit; ++i) {
    total += binom;
    binom = binom * static_cast<std::uint64_t>(n - i) / static_cast<std::uint64_t>(i + 1);
  }
  return total;
}

namespace {

std::uint64_t reduce61(unsigned __int128 x) noexcept {
  constexpr std::uint64_t p = ModP::kPrime;
  std::uint64_t lo = static_cast<std::uint64_t>(x & p);
  std::uint64_t hi = static_cast<std::uint64_t>(x >> 61);
  std::uint64_t r = lo + hi;
  while (r >= p) r -= p;
  return r;
}

}  // namespace

ModP::ModP(std::int64_t v) {
  const auto p = static_cast<std::int64_t>(kPrime);
  std::int64_t r = v % p;
  if (r < 0) r += p;
  v_ = static_cast<std::uint64_t>(r);
}

ModP ModP::from_integer(const Integer& v) {
  Integer r = v % Integer(kPrime);
  if (r < 0) r += kPrime;
  ModP m;
  m.v_ = r.convert_to<std::uint64_t>();
  return m;
}

ModP& ModP::operator+=(const ModP& o) noexcept {
  v_ += o.v_;
  if (v_ >= kPrime) v_ -= kPrime;
  return *this;
}

ModP& ModP::operator-=(const ModP& o) noexcept {
  v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + kPrime - o.v_;
  return *this;
}

ModP& ModP::operator*=(const ModP& o) noexcept {
  v_ = reduce61(static_cast<unsigned __int128>(v_) * o.v_);
  return *this;
}

std::ostream& operator<<(std::ostream& os, const ModP& v) { return os << v.value(); }

SmallIndex::SmallIndex(int n, Alpha alpha) : n_(n), alpha_(alpha), limit_(alpha.floor_of(n)) {
  if (n < 0 || n > kMaxUniverse) throw InputError("table universe must have at most 32 elements");
  masks_.reserve(static_cast<std::size_t>(small_count(n, alpha)));
  masks_.push_back(0);
  for (int c = 1; c <= limit_; ++c) {
    // Gosper's hack over c-subsets of n bits, in 64-bit to avoid overflow at n = 32.
    std::uint64_t x = (std::uint64_t{1} << c) - 1;
    const std::uint64_t end = std::uint64_t{1} << n;
    while (x < end) {
      masks_.push_back(static_cast<Mask>(x));
      const std::uint64_t low = x & (~x + 1);
      const std::uint64_t ripple = x + low;
      x = ripple | (((x ^ ripple) >> 2) / low);
    }
  }
}

SmallTable<ModP> reduce(const SmallTable<Integer>& t) {
  SmallTable<ModP> out(t.shared_index());
  for (Mask x : t.index().masks()) out.set(x, ModP::from_integer(t.at(x)));
  return out;
}

}  // namespace exactpart
