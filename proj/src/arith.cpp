#include "heegcone/arith.hpp"

#include "heegcone/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <vector>

namespace heegcone {

int kronecker(const Integer& D, const Integer& n) {
  HEEGCONE_REQUIRE(D != 0, ErrorCode::invalid_argument, "kronecker symbol needs D != 0");
  return mpz_kronecker(D.get_mpz_t(), n.get_mpz_t());
}

int moebius(std::uint64_t n) {
  HEEGCONE_REQUIRE(n >= 1, ErrorCode::invalid_argument, "moebius needs n >= 1");
  int mu = 1;
  for (auto [p, e] : factor(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

QuadChar::QuadChar(const Integer& D) : D_(D) {
  HEEGCONE_REQUIRE(D != 0, ErrorCode::invalid_argument, "character needs D != 0");
  const Integer r = mod(D, Integer(4));
  HEEGCONE_REQUIRE(r == 0 || r == 1, ErrorCode::invalid_argument, "character discriminant must be 0 or 1 mod 4");
  auto [core, sq] = squarefree_split(abs(D));
  Integer d = D > 0 ? core : Integer(-core);
  if (mod(d, Integer(4)) == 1) {
    D0_ = d;
    c_ = sq;
  } else {
    D0_ = 4 * d;
    c_ = sq / 2;
  }
}

Rational sigma_char(long s, const Integer& a, const QuadChar& chi) {
  HEEGCONE_REQUIRE(a >= 1, ErrorCode::invalid_argument, "divisor sum needs a >= 1");
  HEEGCONE_REQUIRE(a.fits_ulong_p(), ErrorCode::invalid_argument, "divisor sum argument too large");
  Rational sum = 0;
  for (auto d : divisors(a.get_ui())) {
    const int c = chi(Integer(static_cast<unsigned long>(d)));
    if (c != 0) sum += c * rpow(Rational(Integer(static_cast<unsigned long>(d))), s);
  }
  return sum;
}

Integer sigma(unsigned s, const Integer& a) {
  HEEGCONE_REQUIRE(a >= 1 && a.fits_ulong_p(), ErrorCode::invalid_argument, "divisor sum argument out of range");
  Integer sum = 0;
  for (auto d : divisors(a.get_ui())) sum += ipow(Integer(static_cast<unsigned long>(d)), s);
  return sum;
}

Rational bernoulli(unsigned n) {
  static std::mutex guard;
  static std::vector<Rational> cache{Rational(1)};
  std::lock_guard lock(guard);
  while (cache.size() <= n) {
    // sum_{k=0}^{m} C(m+1, k) B_k = 0.
    const unsigned m = static_cast<unsigned>(cache.size());
    Rational s = 0;
    Integer binom = 1;
    for (unsigned k = 0; k < m; ++k) {
      s += binom * cache[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    cache.push_back(-s / (m + 1));
  }
  return cache[n];
}

Rational bernoulli_polynomial(unsigned n, const Rational& x) {
  Rational s = 0;
  Integer binom = 1;
  for (unsigned k = 0; k <= n; ++k) {
    s += binom * bernoulli(k) * rpow(x, static_cast<long>(n - k));
    binom = binom * (n - k) / (k + 1);
  }
  return s;
}

Rational gen_bernoulli(unsigned n, const QuadChar& chi) {
  HEEGCONE_REQUIRE(n >= 1, ErrorCode::invalid_argument, "generalized Bernoulli index must be positive");
  const Integer f = chi.modulus();
  HEEGCONE_REQUIRE(f.fits_ulong_p(), ErrorCode::invalid_argument, "character modulus too large");
  const unsigned long fu = f.get_ui();
  Rational s = 0;
  for (unsigned long a = 1; a <= fu; ++a) {
    const int c = chi(Integer(a));
    if (c != 0) s += c * bernoulli_polynomial(n, ratio(Integer(a), f));
  }
  return s * ipow(f, n - 1);
}

Interval ExactLValue::enclose(int bits) const {
  Interval v(rational);
  if (pi_exponent != 0) {
    const Interval p = pi_interval(bits);
    Interval pw = pow(p, static_cast<unsigned>(std::abs(pi_exponent)));
    v = pi_exponent > 0 ? v * pw : v / pw;
  }
  if (sqrt_content != 1) v = v * sqrt(Rational(sqrt_content), bits);
  return v;
}

std::string ExactLValue::str() const {
  std::string s = to_string(rational);
  if (pi_exponent != 0) s += "*pi^" + std::to_string(pi_exponent);
  if (sqrt_content != 1) s += "*sqrt(" + sqrt_content.get_str() + ")";
  return s;
}

ExactLValue l_value_exact(long s, const QuadChar& chi) {
  ExactLValue out;
  if (s <= 0) {
    const unsigned n = static_cast<unsigned>(1 - s);
    out.rational = -gen_bernoulli(n, chi) / n;
    return out;
  }
  HEEGCONE_REQUIRE(!(s == 1 && chi.is_principal()), ErrorCode::invalid_argument, "L(1, principal) diverges");
  const int parity = chi.parity();
  const int delta = parity == 1 ? 0 : 1;
  HEEGCONE_REQUIRE((s - delta) % 2 == 0, ErrorCode::parity_unsupported,
                   "L(" + std::to_string(s) + ", chi_" + chi.discriminant().get_str() +
                       ") has no closed form: chi(-1) != (-1)^s");
  const QuadChar prim(chi.fundamental());
  const Integer f = prim.conductor();
  Rational value = gen_bernoulli(static_cast<unsigned>(s), prim);
  value *= ipow(Integer(2), static_cast<unsigned>(s - 1));
  Integer fact = 1;
  for (long i = 2; i <= s; ++i) fact *= i;
  value /= fact;
  value /= ipow(f, static_cast<unsigned>(s));
  if (((1 + (s - delta) / 2) % 2) != 0) value = -value;
  for (auto [p, e] : factor(chi.cofactor() == 0 ? Integer(1) : chi.cofactor())) {
    (void)e;
    const Integer P = static_cast<unsigned long>(p);
    value *= 1 - Rational(prim(P)) / ipow(P, static_cast<unsigned>(s));
  }
  auto [core, sq] = squarefree_split(f);
  out.rational = value * sq;
  out.pi_exponent = static_cast<int>(s);
  out.sqrt_content = core;
  return out;
}

namespace {

Integer pow2(int bits) {
  Integer r = 1;
  r <<= bits;
  return r;
}

// Enclosure of n^(-s) scaled by 2^bits, as [floor, ceil] integers.
std::pair<Integer, Integer> scaled_inverse_power(unsigned long n, const Rational& s, int bits, const Integer& scale) {
  if (s.get_den() == 1) {
    const Integer d = ipow(Integer(n), static_cast<unsigned>(s.get_num().get_ui()));
    Integer lo, hi;
    mpz_fdiv_q(lo.get_mpz_t(), scale.get_mpz_t(), d.get_mpz_t());
    mpz_cdiv_q(hi.get_mpz_t(), scale.get_mpz_t(), d.get_mpz_t());
    return {lo, hi};
  }
  const Interval v = rational_power(Rational(Integer(n)), s, bits);
  const Rational lo = Rational(1) / v.upper(), hi = Rational(1) / v.lower();
  Integer a, b;
  Integer num = lo.get_num() * scale;
  mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), lo.get_den_mpz_t());
  num = hi.get_num() * scale;
  mpz_cdiv_q(b.get_mpz_t(), num.get_mpz_t(), hi.get_den_mpz_t());
  return {a, b};
}

}  // namespace

Interval l_value_interval(const Rational& s, const QuadChar& chi, const Rational& width) {
  HEEGCONE_REQUIRE(s > 1, ErrorCode::invalid_argument, "interval L-values need s > 1");
  HEEGCONE_REQUIRE(width > 0, ErrorCode::invalid_argument, "width must be positive");
  if (chi.cofactor() != 1) {
    // Primitive core times the finite Euler factors at primes dividing the cofactor.
    Interval factors(Rational(1));
    Rational growth = 1;  // bounds every |factor| product, since s > 1
    const QuadChar prim(chi.fundamental());
    for (auto [p, e] : factor(chi.cofactor())) {
      (void)e;
      const Integer P = static_cast<unsigned long>(p);
      const int c = prim(P);
      if (c == 0) continue;
      growth *= 1 + ratio(Integer(1), P);
      const Interval ps = s.get_den() == 1 ? Interval(rpow(Rational(P), -s.get_num().get_si()))
                                           : Interval(Rational(1)) / rational_power(Rational(P), s);
      factors = factors * (Interval(Rational(1)) - Interval(Rational(c)) * ps);
    }
    const Interval core = l_value_interval(s, prim, width / (4 * growth));
    return core * factors;
  }
  const Integer f = chi.modulus();
  HEEGCONE_REQUIRE(f.fits_ulong_p() && f < 100000000, ErrorCode::invalid_argument, "character modulus too large");
  const unsigned long fu = f.get_ui();
  std::vector<int> table(fu);
  for (unsigned long a = 0; a < fu; ++a) table[a] = chi(Integer(a));
  const bool principal_period = fu == 1;
  // Tail beyond N. Principal (f = 1): sum_{n>N} n^-s lies in [(N+1)^(1-s), N^(1-s)]/(s-1).
  // Otherwise, with f | N and sum over a period vanishing:
  // |tail| <= (f+1)/2 N^-s + s f (f+1)/2 N^(-s-1).
  const double sd = s.get_d();
  const double target = width.get_d() / 4;
  double nd;
  if (principal_period) {
    nd = std::pow(1 / ((sd - 1) * target), 1 / sd) + 1;
  } else {
    const double fd = static_cast<double>(fu);
    nd = std::pow((fd + 1) * (1 + sd) / target, 1 / sd);
    nd = std::ceil(nd / fd) * fd;
  }
  HEEGCONE_REQUIRE(nd < 5e8, ErrorCode::budget_exceeded, "L-value enclosure would need too many terms");
  unsigned long N = static_cast<unsigned long>(std::max(nd, 2.0));
  if (!principal_period) N = ((N + fu - 1) / fu) * fu;
  // Working precision: enough that N rounding errors stay far below the width.
  int bits = 64;
  while (ratio(Integer(N), pow2(bits)) > width / 64) bits += 16;
  const Integer scale = pow2(bits);
  Integer lo = 0, hi = 0;
  for (unsigned long n = 1; n <= N; ++n) {
    const int c = table[n % fu];
    if (c == 0) continue;
    auto [a, b] = scaled_inverse_power(n, s, bits, scale);
    if (c > 0) {
      lo += a;
      hi += b;
    } else {
      lo -= b;
      hi -= a;
    }
  }
  Interval head(ratio(lo, scale), ratio(hi, scale));
  Interval tail;
  const Rational one_minus_s = 1 - s;
  if (principal_period) {
    auto pw = [&](unsigned long base) {
      return s.get_den() == 1 ? Interval(rpow(Rational(Integer(base)), one_minus_s.get_num().get_si()))
                              : rational_power(Rational(Integer(base)), one_minus_s, bits);
    };
    const Interval up = pw(N), down = pw(N + 1);
    tail = Interval(down.lower() / (s - 1), up.upper() / (s - 1));
  } else {
    auto npow = [&](const Rational& e) {
      return s.get_den() == 1 ? rpow(Rational(Integer(N)), e.get_num().get_si())
                              : rational_power(Rational(Integer(N)), e, bits).upper();
    };
    const Rational bound = ratio(Integer(fu + 1), Integer(2)) * npow(-s) + s * ratio(Integer(fu) * (fu + 1), Integer(2)) * npow(-s - 1);
    tail = Interval(-bound, bound);
  }
  return (head + tail).rounded(bits);
}

Interval euler_product_constant(EulerConstant kind, const Rational& width) {
  HEEGCONE_REQUIRE(width > 0, ErrorCode::invalid_argument, "width must be positive");
  if (kind == EulerConstant::cone_bound) {
    const Interval l = euler_product_constant(EulerConstant::landau, width);
    const Interval a = euler_product_constant(EulerConstant::artin, width);
    return Interval(Rational(1)) - (l - a) / Interval(Rational(2));
  }
  static std::mutex guard;
  static std::map<std::pair<int, Rational>, Interval> cache;
  const bool plus = kind == EulerConstant::landau;
  {
    std::lock_guard lock(guard);
    if (auto it = cache.find({plus ? 1 : 0, width}); it != cache.end()) return it->second;
  }
  // Tail over p > P: sum 1/(p(p-1)) <= 1/P, so the plus product gains a factor in
  // [1, exp(1/P)] <= [1, 1 + 1/P + 1/P^2] and the minus product one in [1 - 1/P, 1].
  const Rational pr = Rational(4) / width;
  Integer pz = pr.get_num() / pr.get_den() + 1;
  HEEGCONE_REQUIRE(pz < 400000000, ErrorCode::budget_exceeded, "Euler product width too small");
  const std::uint32_t P = static_cast<std::uint32_t>(pz.get_ui());
  const int bits = 128;
  const Integer scale = pow2(bits);
  Integer lo = scale, hi = scale;
  for (std::uint32_t p : primes_up_to(P)) {
    const Integer den = Integer(p) * (p - 1);
    const Integer num = plus ? Integer(den + 1) : Integer(den - 1);
    lo *= num;
    mpz_fdiv_q(lo.get_mpz_t(), lo.get_mpz_t(), den.get_mpz_t());
    hi *= num;
    mpz_cdiv_q(hi.get_mpz_t(), hi.get_mpz_t(), den.get_mpz_t());
  }
  Interval head(ratio(lo, scale), ratio(hi, scale));
  const Rational inv = ratio(Integer(1), Integer(P));
  Interval tail = plus ? Interval(Rational(1), 1 + inv + inv * inv) : Interval(1 - inv, Rational(1));
  Interval out = head * tail;
  std::lock_guard lock(guard);
  cache.emplace(std::make_pair(plus ? 1 : 0, width), out);
  return out;
}

}  // namespace heegcone
