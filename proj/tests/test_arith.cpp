#include "doctest.h"

#include <numeric>

#include "heegcone/arith.hpp"
#include "heegcone/error.hpp"

using namespace heegcone;

namespace {

// Euler's criterion with the quadratic-residue definition, for odd prime n.
int legendre_oracle(long a, long p) {
  const long r = ((a % p) + p) % p;
  if (r == 0) return 0;
  for (long x = 1; x < p; ++x)
    if ((x * x) % p == r) return 1;
  return -1;
}

Rational q(long a, long b) { return ratio(Integer(a), Integer(b)); }

}  // namespace

TEST_CASE("kronecker symbol") {
  for (long n = 1; n < 40; ++n) CHECK(kronecker(1, n) == 1);
  CHECK(kronecker(-4, 3) == -1);
  CHECK(kronecker(8, 3) == -1);
  CHECK(kronecker(5, 2) == -1);
  CHECK(kronecker(-3, 2) == -1);
  CHECK(kronecker(12, 2) == 0);
  CHECK(kronecker(-4, -1) == -1);
  CHECK_THROWS_AS(kronecker(0, 3), Error);
  for (long p : {3, 5, 7, 11, 13})
    for (long a = -30; a <= 30; ++a)
      if (a != 0) CHECK(kronecker(a, p) == legendre_oracle(a, p));
  for (long D : {-20, -15, -8, -7, -4, -3, 5, 8, 12, 13, 21, 24})
    for (long a = 1; a < 30; ++a)
      for (long b = 1; b < 30; ++b) CHECK(kronecker(D, a * b) == kronecker(D, a) * kronecker(D, b));
}

TEST_CASE("moebius and divisor sums") {
  CHECK(moebius(1) == 1);
  CHECK(moebius(6) == 1);
  CHECK(moebius(4) == 0);
  CHECK(moebius(30) == -1);
  const QuadChar one(1), m4(-4), d12(12);
  CHECK(sigma_char(7, 1, m4) == 1);
  CHECK(sigma_char(-1, 2, one) == q(3, 2));
  CHECK(sigma_char(-9, 4, m4) == 1);
  for (long a = 1; a < 20; ++a)
    for (long b = 1; b < 20; ++b) {
      if (std::gcd(a, b) != 1) continue;
      CHECK(sigma_char(-3, a * b, d12) == sigma_char(-3, a, d12) * sigma_char(-3, b, d12));
    }
  CHECK(sigma(1, 6) == 12);
  CHECK(sigma(5, 2) == 33);
}

TEST_CASE("characters") {
  const QuadChar c(-16);
  CHECK(c.fundamental() == -4);
  CHECK(c.cofactor() == 2);
  CHECK(QuadChar(12).fundamental() == 12);
  CHECK(QuadChar(4).fundamental() == 1);
  CHECK(QuadChar(-75).fundamental() == -3);
  CHECK_THROWS_AS(QuadChar(3), Error);
}

TEST_CASE("Bernoulli numbers") {
  CHECK(bernoulli(1) == q(-1, 2));
  CHECK(bernoulli(2) == q(1, 6));
  CHECK(bernoulli(4) == q(-1, 30));
  CHECK(bernoulli(12) == q(-691, 2730));
  CHECK(bernoulli(14) == q(7, 6));
  CHECK(gen_bernoulli(2, QuadChar(1)) == q(1, 6));
  CHECK(gen_bernoulli(1, QuadChar(-4)) == q(-1, 2));
  CHECK(gen_bernoulli(2, QuadChar(-4)) == 0);
  CHECK(gen_bernoulli(3, QuadChar(-4)) == q(3, 2));
}

TEST_CASE("exact L-values") {
  const ExactLValue z2 = l_value_exact(2, QuadChar(1));
  CHECK(z2.rational == q(1, 6));
  CHECK(z2.pi_exponent == 2);
  CHECK(z2.sqrt_content == 1);
  const ExactLValue l4 = l_value_exact(2, QuadChar(4));
  CHECK(l4.rational == q(1, 8));
  CHECK(l4.pi_exponent == 2);
  const ExactLValue l0 = l_value_exact(0, QuadChar(-4));
  CHECK(l0.rational == q(1, 2));
  CHECK(l0.pi_exponent == 0);
  const ExactLValue l3 = l_value_exact(3, QuadChar(-4));
  CHECK(l3.rational == q(1, 32));
  CHECK(l3.pi_exponent == 3);
  CHECK(l_value_exact(-1, QuadChar(1)).rational == q(-1, 12));
  CHECK_THROWS_AS(l_value_exact(2, QuadChar(-4)), Error);
  try {
    l_value_exact(3, QuadChar(5));
    FAIL("expected parity error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parity_unsupported);
  }
}

TEST_CASE("interval L-values") {
  const Interval z2 = l_value_interval(2, QuadChar(1), q(1, 1000000));
  CHECK(z2.contains(q(1644934, 1000000)));
  CHECK(z2.width() <= q(1, 1000000));
  const Interval l3 = l_value_interval(3, QuadChar(-4), q(1, 100000000));
  CHECK(l3.contains(l_value_exact(3, QuadChar(-4)).enclose()));
  CHECK(l_value_interval(3, QuadChar(1), q(1, 1000)).contains(l_value_interval(3, QuadChar(1), q(1, 100000))));
  for (long D : {1, -3, -4, 5, 8, -7, 12, -8, -20, 24, 13, -15, 16, -16})
    for (long s = 2; s <= 12; ++s) {
      const QuadChar chi{Integer(D)};
      if ((chi.parity() == 1) != (s % 2 == 0)) continue;
      const Interval exact = l_value_exact(s, chi).enclose();
      const Interval series = l_value_interval(s, chi, q(1, 10000000));
      CHECK(series.contains(exact));
    }
  const Interval half = l_value_interval(q(5, 2), QuadChar(1), q(1, 10000));
  CHECK(half.contains(q(13415, 10000)));
  CHECK_THROWS_AS(l_value_interval(1, QuadChar(1), q(1, 10)), Error);
}

TEST_CASE("Euler product constants") {
  const Rational w = q(1, 1000000);
  const Interval landau = euler_product_constant(EulerConstant::landau, w);
  const Interval artin = euler_product_constant(EulerConstant::artin, w);
  const Interval cone = euler_product_constant(EulerConstant::cone_bound, w);
  // Printed values are truncated decimals: the enclosure must sit inside [x, x + 10^-6].
  CHECK(Interval(q(1943596, 1000000), q(1943597, 1000000)).contains(landau));
  CHECK(Interval(q(373955, 1000000), q(373956, 1000000)).contains(artin));
  CHECK(Interval(q(215179, 1000000), q(215180, 1000000)).contains(cone));
  CHECK(cone.positive());
  CHECK(landau.width() <= w);
  CHECK(artin.width() <= w);
  CHECK(cone.width() <= w);
  // 315 zeta(3) / (2 pi^4), independently enclosed.
  const Interval z3 = l_value_interval(3, QuadChar(1), q(1, 1000000000));
  const Interval pi4 = pow(pi_interval(), 4);
  const Interval closed = Interval(Rational(315)) * z3 / (Interval(Rational(2)) * pi4);
  CHECK(landau.lower() <= closed.upper());
  CHECK(closed.lower() <= landau.upper());
}
