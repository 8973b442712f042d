#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "exactpart/transforms.hpp"
#include "oracles.hpp"

using namespace exactpart;

namespace {

SmallTable<Integer> random_table(int n, Alpha alpha, std::mt19937_64& rng) {
  SmallTable<Integer> t(n, alpha);
  std::uniform_int_distribution<int> d(-50, 50);
  for (Mask x : t.index().masks()) t.set(x, d(rng));
  return t;
}

std::uint64_t touch_bound(int n, Alpha alpha) { return static_cast<std::uint64_t>(n + 1) * small_count(n, alpha); }

}  // namespace

TEST_CASE("alpha parsing is exact") {
  CHECK(Alpha::parse("1/4") == Alpha(1, 4));
  CHECK(Alpha::parse("0.25") == Alpha(1, 4));
  CHECK(Alpha::parse("0.27") == Alpha(27, 100));
  CHECK(Alpha::parse("1") == Alpha(1, 1));
  CHECK(Alpha::parse("0.2").floor_of(10) == 2);
  CHECK(Alpha(27, 100).floor_of(20) == 5);
  CHECK(Alpha(1, 4).ceil_of(10) == 3);
  CHECK_THROWS_AS(Alpha::parse("1.5"), InputError);
  CHECK_THROWS_AS(Alpha::parse("abc"), InputError);
  CHECK_THROWS_AS(Alpha::parse("1/0"), InputError);
}

TEST_CASE("small index enumerates exactly the alpha-small subsets") {
  for (int n : {1, 5, 10}) {
    for (Alpha a : {Alpha(1, 4), Alpha(1, 2), Alpha(1, 1)}) {
      const SmallIndex idx(n, a);
      CHECK(idx.size() == small_count(n, a));
      int last = 0;
      for (Mask x : idx.masks()) {
        CHECK(idx.is_small(x));
        CHECK(cardinality(x) >= last);
        last = cardinality(x);
      }
    }
  }
  CHECK(small_count(20, Alpha(1, 1)) == (1u << 20));
}

TEST_CASE("zeta examples") {
  SmallTable<Integer> delta(6, Alpha(1, 2));
  for (Mask x : delta.index().masks()) delta.set(x, x == 0 ? 1 : 0);
  const auto z = zeta_small(delta);
  for (Mask x : z.index().masks()) CHECK(z.at(x) == 1);

  SmallTable<Integer> singles(6, Alpha(1, 1));
  for (Mask x : singles.index().masks()) singles.set(x, cardinality(x) == 1 ? 1 : 0);
  const auto zs = zeta_small(singles);
  for (Mask x : zs.index().masks()) CHECK(zs.at(x) == cardinality(x));
}

TEST_CASE("transforms match direct double loops") {
  std::mt19937_64 rng(42);
  const auto f = random_table(10, Alpha(3, 10), rng);
  const auto z = zeta_small(f);
  const std::function<Integer(Mask)> fv = [&](Mask y) { return f.at(y); };
  for (Mask x : f.index().masks()) REQUIRE(z.at(x) == oracle::zeta_direct(fv, x));
  CHECK(z.touched_counter() <= touch_bound(10, Alpha(3, 10)));

  const auto g = random_table(9, Alpha(33, 100), rng);
  const auto m = mobius_small(g);
  const std::function<Integer(Mask)> gv = [&](Mask y) { return g.at(y); };
  for (Mask x : g.index().masks()) REQUIRE(m.at(x) == oracle::mobius_direct(gv, x));
}

TEST_CASE("mobius of the constant one is the indicator of the empty set") {
  SmallTable<Integer> one(8, Alpha(1, 2));
  for (Mask x : one.index().masks()) one.set(x, 1);
  const auto m = mobius_small(one);
  for (Mask x : m.index().masks()) CHECK(m.at(x) == (x == 0 ? 1 : 0));
}

TEST_CASE("sigma examples") {
  SmallTable<Integer> t(4, Alpha(1, 1));
  for (Mask x : t.index().masks()) t.set(x, 2);
  t.set(0, 5);
  const auto s = sigma_small(t);
  CHECK(s.at(0) == 5);
  CHECK(s.at(0b0111) == -2);
  CHECK(s.at(0b0011) == 2);
  const auto back = sigma_small(s);
  for (Mask x : t.index().masks()) CHECK(back.at(x) == t.at(x));
}

TEST_CASE("round trips and the touch bound") {
  std::mt19937_64 rng(7);
  for (int n = 8; n <= 16; ++n) {
    for (Alpha a : {Alpha(1, 4), Alpha(27, 100), Alpha(1, 2), Alpha(1, 1)}) {
      if (n > 12 && a == Alpha(1, 1)) continue;
      const auto f = random_table(n, a, rng);
      const auto z = zeta_small(f);
      const auto back = mobius_small(z);
      const auto other = zeta_small(mobius_small(f));
      CHECK(z.touched_counter() <= touch_bound(n, a));
      CHECK(back.touched_counter() <= touch_bound(n, a));
      for (Mask x : f.index().masks()) {
        REQUIRE(back.at(x) == f.at(x));
        REQUIRE(other.at(x) == f.at(x));
      }
    }
  }
}

TEST_CASE("integer and modular rings agree after reduction") {
  std::mt19937_64 rng(9);
  SmallTable<Integer> f(10, Alpha(2, 5));
  for (Mask x : f.index().masks()) f.set(x, Integer(rng() % 1000000) * Integer(rng()) - Integer(rng()));
  const auto fm = reduce(f);
  const auto z = reduce(zeta_small(f));
  const auto zm = zeta_small(fm);
  const auto m = reduce(mobius_small(f));
  const auto mm = mobius_small(fm);
  const auto s = reduce(sigma_small(f));
  const auto sm = sigma_small(fm);
  for (Mask x : f.index().masks()) {
    REQUIRE(z.at(x) == zm.at(x));
    REQUIRE(m.at(x) == mm.at(x));
    REQUIRE(s.at(x) == sm.at(x));
  }
}

TEST_CASE("incomplete tables are rejected") {
  SmallTable<Integer> t(4, Alpha(1, 2));
  t.set(0, 1);
  CHECK_THROWS_AS((void)zeta_small(t), IncompleteTable);
  CHECK_THROWS_AS((void)mobius_small(t), IncompleteTable);
  CHECK_THROWS_AS((void)t.at(0b0011), IncompleteTable);
  CHECK_THROWS_AS(t.set(0b0111, 1), InputError);
}

TEST_CASE("sparse storage above the dense limit") {
  SmallTable<Integer> t(26, Alpha(1, 13));  // subsets of size <= 2
  for (Mask x : t.index().masks()) t.set(x, cardinality(x) == 1 ? 1 : 0);
  const auto z = zeta_small(t);
  CHECK_FALSE(z.index().dense());
  CHECK(z.at(0b11u << 20) == 2);
  CHECK(z.at(0) == 0);
}

TEST_CASE("polynomials") {
  const ZPolynomial p(5, {1, 3});
  CHECK((p * p).coeffs() == std::vector<Integer>{1, 6, 9});
  CHECK(ZPolynomial::one_plus_z_pow(2, 4).coeffs() == std::vector<Integer>{1, 4, 6});
  const ZPolynomial q(1, {1, 1});
  CHECK((q * q).coeffs() == std::vector<Integer>{1, 2});  // truncated at degree 1
  CHECK((p - p).coeffs().empty());
  CHECK(p.str() == "1 + 3z");
  CHECK(ModP(-1).value() == ModP::kPrime - 1);
  CHECK((ModP(ModP::kPrime - 1) * ModP(ModP::kPrime - 1)).value() == 1);
}
