#include "heegcone/interval.hpp"

#include "heegcone/error.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace heegcone {

namespace {

Integer pow2(int bits) {
  Integer r = 1;
  r <<= bits;
  return r;
}

}  // namespace

Rational round_down(const Rational& x, int bits) {
  if (x.get_den() == 1) return x;
  const Integer scale = pow2(bits);
  Integer n = x.get_num() * scale;
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), x.get_den_mpz_t());
  Rational r(q, scale);
  r.canonicalize();
  return r;
}

Rational round_up(const Rational& x, int bits) {
  if (x.get_den() == 1) return x;
  const Integer scale = pow2(bits);
  Integer n = x.get_num() * scale;
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), x.get_den_mpz_t());
  Rational r(q, scale);
  r.canonicalize();
  return r;
}

Interval::Interval(const Rational& lo, const Rational& hi) : lo_(lo), hi_(hi) {
  HEEGCONE_REQUIRE(lo <= hi, ErrorCode::invalid_argument, "interval with lower > upper");
}

Interval Interval::rounded(int bits) const { return Interval(round_down(lo_, bits), round_up(hi_, bits)); }

Interval& Interval::operator+=(const Interval& o) {
  lo_ = round_down(lo_ + o.lo_, default_interval_bits);
  hi_ = round_up(hi_ + o.hi_, default_interval_bits);
  return *this;
}

Interval& Interval::operator-=(const Interval& o) {
  Rational lo = round_down(lo_ - o.hi_, default_interval_bits);
  hi_ = round_up(hi_ - o.lo_, default_interval_bits);
  lo_ = lo;
  return *this;
}

Interval& Interval::operator*=(const Interval& o) {
  const Rational a = lo_ * o.lo_, b = lo_ * o.hi_, c = hi_ * o.lo_, d = hi_ * o.hi_;
  lo_ = round_down(std::min({a, b, c, d}), default_interval_bits);
  hi_ = round_up(std::max({a, b, c, d}), default_interval_bits);
  return *this;
}

Interval& Interval::operator/=(const Interval& o) {
  HEEGCONE_REQUIRE(o.positive() || o.negative(), ErrorCode::invalid_argument,
                   "interval division by an interval containing zero");
  const Rational a = lo_ / o.lo_, b = lo_ / o.hi_, c = hi_ / o.lo_, d = hi_ / o.hi_;
  lo_ = round_down(std::min({a, b, c, d}), default_interval_bits);
  hi_ = round_up(std::max({a, b, c, d}), default_interval_bits);
  return *this;
}

std::string Interval::str() const { return "[" + to_string(lo_) + "," + to_string(hi_) + "]"; }

Interval operator+(Interval a, const Interval& b) { return a += b; }
Interval operator-(Interval a, const Interval& b) { return a -= b; }
Interval operator*(Interval a, const Interval& b) { return a *= b; }
Interval operator/(Interval a, const Interval& b) { return a /= b; }
Interval operator-(const Interval& a) { return Interval(-a.upper(), -a.lower()); }

Interval pow(const Interval& x, unsigned n) {
  Interval r(Rational(1));
  for (unsigned i = 0; i < n; ++i) r *= x;
  return r;
}

Interval root(const Rational& x, unsigned q, int bits) {
  HEEGCONE_REQUIRE(x >= 0, ErrorCode::invalid_argument, "root of a negative number");
  HEEGCONE_REQUIRE(q >= 1, ErrorCode::invalid_argument, "root of order zero");
  if (q == 1) return Interval(x);
  // floor(x * 2^(q*bits)) and its ceiling bracket the scaled radicand.
  const Integer scale = pow2(static_cast<int>(q) * bits);
  Integer lo_n, hi_n;
  Integer num = x.get_num() * scale;
  mpz_fdiv_q(lo_n.get_mpz_t(), num.get_mpz_t(), x.get_den_mpz_t());
  mpz_cdiv_q(hi_n.get_mpz_t(), num.get_mpz_t(), x.get_den_mpz_t());
  Integer lo_r, hi_r;
  mpz_root(lo_r.get_mpz_t(), lo_n.get_mpz_t(), q);
  const int exact = mpz_root(hi_r.get_mpz_t(), hi_n.get_mpz_t(), q);
  if (!exact) hi_r += 1;
  Rational lo(lo_r, pow2(bits)), hi(hi_r, pow2(bits));
  lo.canonicalize();
  hi.canonicalize();
  return Interval(lo, hi);
}

Interval sqrt(const Rational& x, int bits) { return root(x, 2, bits); }

Interval sqrt(const Interval& x, int bits) {
  HEEGCONE_REQUIRE(x.lower() >= 0, ErrorCode::invalid_argument, "sqrt of a possibly negative interval");
  return Interval(sqrt(x.lower(), bits).lower(), sqrt(x.upper(), bits).upper());
}

Interval rational_power(const Rational& x, const Rational& e, int bits) {
  HEEGCONE_REQUIRE(x > 0, ErrorCode::invalid_argument, "rational_power needs a positive base");
  const Integer& num = e.get_num();
  const Integer& den = e.get_den();
  HEEGCONE_REQUIRE(den.fits_ulong_p() && Integer(abs(num)).fits_ulong_p(), ErrorCode::invalid_argument,
                   "exponent too large");
  const long p = num.get_si();
  const unsigned q = static_cast<unsigned>(den.get_ui());
  // x^(p/q) = (x^p)^(1/q); monotone, so the root enclosure is an enclosure.
  const Rational base = rpow(x, p);
  return root(base, q, bits + 16);
}

Interval pi_interval(int bits) {
  static std::mutex guard;
  static std::map<int, Interval> cache;
  std::lock_guard lock(guard);
  if (auto it = cache.find(bits); it != cache.end()) return it->second;
  // arctan(1/x) = sum (-1)^n / ((2n+1) x^(2n+1)); consecutive partial sums bracket it.
  auto arctan_inv = [bits](long x) {
    Rational sum = 0;
    Rational term(1, x);
    Integer xx = Integer(x) * x;
    Rational prev = 0;
    for (long n = 0;; ++n) {
      Rational t = term / (2 * n + 1);
      prev = sum;
      sum += (n % 2 == 0) ? t : Rational(-t);
      if (t < Rational(1, pow2(bits + 8))) break;
      term /= xx;
    }
    return std::make_pair(std::min(sum, prev), std::max(sum, prev));
  };
  auto [a_lo, a_hi] = arctan_inv(5);
  auto [b_lo, b_hi] = arctan_inv(239);
  Rational lo = 16 * a_lo - 4 * b_hi;
  Rational hi = 16 * a_hi - 4 * b_lo;
  Interval r = Interval(lo, hi).rounded(bits);
  cache.emplace(bits, r);
  return r;
}

Interval hull(const Interval& a, const Interval& b) {
  return Interval(std::min(a.lower(), b.lower()), std::max(a.upper(), b.upper()));
}

}  // namespace heegcone
