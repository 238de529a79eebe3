#include "doctest.h"

#include "heegcone/interval.hpp"

using namespace heegcone;

TEST_CASE("interval arithmetic encloses") {
  const Interval pi = pi_interval();
  CHECK(pi.lower() > ratio(Integer(3141592653), Integer(1000000000)));
  CHECK(pi.upper() < ratio(Integer(3141592654), Integer(1000000000)));
  CHECK(pi.width() < ratio(Integer(1), Integer(1) << 150));
  const Interval s2 = sqrt(Rational(2));
  CHECK(s2.lower() * s2.lower() <= 2);
  CHECK(s2.upper() * s2.upper() >= 2);
  const Interval c = root(Rational(27), 3);
  CHECK(c.contains(Rational(3)));
  const Interval x(Rational(-1), Rational(2));
  const Interval y(Rational(3), Rational(4));
  CHECK((x * y).contains(Rational(-4)));
  CHECK((x * y).contains(Rational(8)));
  CHECK((y / y).contains(Rational(1)));
  CHECK_THROWS((y / x));
  const Interval p = rational_power(Rational(4), ratio(Integer(3), Integer(2)));
  CHECK(p.contains(Rational(8)));
}
