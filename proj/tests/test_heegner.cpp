#include "doctest.h"

#include "heegcone/eisenstein.hpp"
#include "heegcone/error.hpp"
#include "heegcone/heegner.hpp"
#include "heegcone/relation.hpp"

#include <random>

using namespace heegcone;

namespace {

FormalDivisor single(DivisorBasis b, const Rational& m, const DiscElement& mu) {
  FormalDivisor d(b);
  d.add({m, mu}, 1);
  return d;
}

}  // namespace

TEST_CASE("P in H on cyclic groups") {
  const DiscGroup z4(build_named("rank1(4)+U^2"));
  REQUIRE(z4.orders() == std::vector<std::int64_t>{4});
  const DiscElement g1 = z4.element(1);
  CHECK(z4.q_value(g1) == Rational(1, 8));
  FormalDivisor expect(DivisorBasis::H);
  expect.add({4, z4.zero()}, 1);
  expect.add({1, z4.zero()}, -1);
  CHECK(expand_P_in_H(z4, {4, z4.zero()}) == expect);
  FormalDivisor hp(DivisorBasis::P);
  hp.add({4, z4.zero()}, 1);
  hp.add({1, z4.zero()}, 1);
  CHECK(expand_H_in_P(z4, {4, z4.zero()}) == hp);
  CHECK(expand_P_in_H(z4, {Rational(9, 8), g1}).terms().size() == 2);
  CHECK(expand_P_in_H(z4, {3, z4.zero()}) == single(DivisorBasis::H, 3, z4.zero()));
  FormalDivisor two(DivisorBasis::H);
  two.add({2, z4.zero()}, 1);
  two.add({Rational(1, 2), z4.element(2)}, -1);
  CHECK(expand_P_in_H(z4, {2, z4.zero()}) == two);

  const DiscGroup z2(build_named("rank1(2)+U^2"));
  const DiscElement g = z2.element(1);
  FormalDivisor nine(DivisorBasis::H);
  nine.add({9, z2.zero()}, 1);
  nine.add({Rational(9, 4), g}, -1);
  nine.add({1, z2.zero()}, -1);
  nine.add({Rational(1, 4), g}, 1);
  CHECK(expand_P_in_H(z2, {9, z2.zero()}) == nine);
  CHECK_THROWS_AS(expand_P_in_H(z2, {Rational(1, 2), z2.zero()}), Error);
}

TEST_CASE("Moebius round trip") {
  std::mt19937 rng(20240611);
  for (const char* name : {"rank1(2)+U^2", "rank1(4)+U^2", "rank1(6)+U^2", "rank1(8)+U^2", "rank1(2)+rank1(2)+U^2"}) {
    CAPTURE(name);
    const DiscGroup g(build_named(name));
    for (int trial = 0; trial < 40; ++trial) {
      const DiscElement mu = g.element(rng() % g.size());
      const Rational m = g.q_value(mu) + static_cast<long>(rng() % 60) + (g.q_value(mu) == 0 ? 1 : 0);
      const FormalDivisor p = single(DivisorBasis::P, m, mu);
      CHECK(to_P_basis(g, to_H_basis(g, p)) == p);
      const FormalDivisor h = single(DivisorBasis::H, m, mu);
      CHECK(to_H_basis(g, to_P_basis(g, h)) == h);
    }
  }
}

TEST_CASE("multiplicity") {
  const DiscGroup z4(build_named("rank1(4)+U^2"));
  CHECK(multiplicity(z4, z4.zero()) == 2);
  CHECK(multiplicity(z4, z4.element(1)) == 1);
  CHECK(multiplicity(z4, z4.element(2)) == 2);
  const DiscGroup z2(build_named("rank1(2)"));
  CHECK(multiplicity(z2, z2.element(1)) == 2);
}

TEST_CASE("K3 index conversion") {
  const HeegnerIndex a = k3_index_convert(1, 0, 0);
  CHECK(a.m == 1);
  CHECK(a.mu.coords == std::vector<std::int64_t>{0});
  const HeegnerIndex b = k3_index_convert(1, 1, 1);
  CHECK(b.m == Rational(1, 4));
  CHECK(b.mu.coords == std::vector<std::int64_t>{1});
  try {
    k3_index_convert(1, 2, 0);
    FAIL("expected non-positive index");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::non_positive_index);
  }
  for (long d = 1; d <= 5; ++d)
    for (long h = 0; h <= 10; ++h)
      for (long x = 0; x < 2 * d; ++x) {
        if (ratio(x * x, 4 * d) - (h - 1) <= 0) continue;
        const NLIndex back = k3_index_inverse(d, k3_index_convert(d, h, x));
        CHECK(back.h == h);
        CHECK(back.a == x);
      }
}

TEST_CASE("divisor classes") {
  EisensteinOptions o;
  o.level_one_shortcut = false;
  const EisensteinSeries uu(build_named("U^2"), 2, o);
  const DivisorClass c = divisor_class(uu, HeegnerIndex{1, uu.group().zero()}, {});
  CHECK(c.gamma == 24);
  CHECK(c.s.empty());
  const DivisorClass hodge = hodge_class(2);
  CHECK(hodge.gamma == 1);
  CHECK(hodge.s == RatVector{0, 0});

  const EvenLattice l36 = build_named("E8^4+U^2");
  const EisensteinSeries e36(l36, 18);
  CuspBasis basis;
  basis.forms.push_back(lift_scalar(level_one_cusp_basis(18, 10).at(0), 18, "E8^4+U^2"));
  const DiscElement z = e36.group().zero();
  const DivisorClass h1 = divisor_class(e36, HeegnerIndex{1, z}, basis);
  CHECK(h1.s == RatVector{1});
  // linearity: P_{4,0} = H_{4,0} - H_{1,0}
  FormalDivisor p4(DivisorBasis::P);
  p4.add({4, z}, 1);
  const DivisorClass cp = divisor_class(e36, p4, basis);
  const DivisorClass c4 = divisor_class(e36, HeegnerIndex{4, z}, basis);
  CHECK(cp.gamma == c4.gamma - h1.gamma);
  CHECK(cp.s[0] == c4.s[0] - h1.s[0]);

  const EisensteinSeries odd(build_named("rank1(2)+U^2"), Rational(5, 2));
  for (long n = 1; n <= 80; ++n) {
    const Rational m(n, 4);
    const DiscElement mu = (n % 4 == 0) ? odd.group().zero() : odd.group().element(1);
    if (!is_integer(m - odd.group().q_value(mu))) continue;
    CHECK(divisor_class(odd, HeegnerIndex{m, mu}, {}).gamma > 0);
  }
}
