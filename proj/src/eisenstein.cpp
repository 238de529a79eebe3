#include "heegcone/eisenstein.hpp"

#include "heegcone/error.hpp"
#include "heegcone/parallel.hpp"

#include <set>

namespace heegcone {

namespace {

int neg_one_power(long e) { return (e % 2 == 0) ? 1 : -1; }

Integer factorial(unsigned n) {
  Integer r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

Symbolic from_l_value(const ExactLValue& v) {
  Symbolic s;
  s.coeff = v.rational;
  s.half_pi = 2 * v.pi_exponent;
  s.radicand = v.sqrt_content;
  return s;
}

std::int64_t checked_int(const Rational& q, const char* what) {
  HEEGCONE_REQUIRE(is_integer(q) && q.get_num().fits_slong_p(), ErrorCode::invalid_argument,
                   std::string(what) + " must be a machine integer");
  return q.get_num().get_si();
}

}  // namespace

std::string to_string(EpsilonFormula f) { return f == EpsilonFormula::euler_product ? "euler_product" : "divisor_sum"; }
std::string to_string(CoefficientMode m) { return m == CoefficientMode::exact ? "exact" : "interval"; }

CoefficientMode parse_mode(const std::string& text) {
  if (text == "exact") return CoefficientMode::exact;
  if (text == "interval") return CoefficientMode::interval;
  throw Error(ErrorCode::parse, "unknown mode '" + text + "'");
}

int Coefficient::sign() const {
  if (exact) return sgn(value);
  if (enclosure.positive()) return 1;
  if (enclosure.negative()) return -1;
  if (enclosure.lower() == 0 && enclosure.upper() == 0) return 0;
  return 2;
}

std::string Coefficient::value_str() const { return exact ? to_string(value) : enclosure.str(); }

Symbolic operator*(const Symbolic& a, const Symbolic& b) {
  Symbolic r;
  r.coeff = a.coeff * b.coeff;
  r.half_pi = a.half_pi + b.half_pi;
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.radicand.get_mpz_t(), b.radicand.get_mpz_t());
  r.coeff *= g;
  r.radicand = (a.radicand / g) * (b.radicand / g);
  if (r.coeff == 0) {
    r.half_pi = 0;
    r.radicand = 1;
  }
  return r;
}

Symbolic operator/(const Symbolic& a, const Symbolic& b) {
  HEEGCONE_REQUIRE(b.coeff != 0, ErrorCode::invalid_argument, "division by zero");
  Symbolic inv;
  inv.coeff = 1 / (b.coeff * b.radicand);
  inv.half_pi = -b.half_pi;
  inv.radicand = b.radicand;
  return a * inv;
}

Symbolic symbolic_sqrt(const Rational& x) {
  HEEGCONE_REQUIRE(x > 0, ErrorCode::invalid_argument, "square root of a non-positive number");
  // sqrt(a/b) = sqrt(a b) / b
  Integer ab = x.get_num() * x.get_den();
  auto [core, square] = squarefree_split(ab);
  Symbolic s;
  s.coeff = ratio(square, x.get_den());
  s.radicand = core;
  return s;
}

Symbolic symbolic_pi_power(int half_pi) {
  Symbolic s;
  s.half_pi = half_pi;
  return s;
}

Interval Symbolic::enclose(int bits) const {
  Interval r(coeff);
  if (radicand != 1) r *= sqrt(Rational(radicand), bits);
  if (half_pi != 0) {
    Interval pi = pi_interval(bits);
    Interval base = (half_pi % 2 == 0) ? pi : sqrt(pi, bits);
    unsigned e = static_cast<unsigned>(half_pi % 2 == 0 ? std::abs(half_pi) / 2 : std::abs(half_pi));
    Interval p = pow(base, e);
    if (half_pi > 0) r *= p;
    else r /= p;
  }
  return r.rounded(bits);
}

std::string Symbolic::str() const {
  std::string s = to_string(coeff);
  if (half_pi != 0) s += " * pi^(" + std::to_string(half_pi) + "/2)";
  if (radicand != 1) s += " * sqrt(" + to_string(radicand) + ")";
  return s;
}

EisensteinSeries::EisensteinSeries(const EvenLattice& lattice, const Rational& weight, EisensteinOptions options)
    : lattice_(lattice), group_(lattice), weight_(weight), options_(std::move(options)) {
  validate_weight(lattice_, weight_);
  Rational twice_k = 2 * weight_;
  long two_k = checked_int(twice_k, "2k");
  long rank = static_cast<long>(lattice_.rank());
  padding_ = static_cast<int>((two_k - rank) / 2);
  long law = two_k - lattice_.sig_plus() + lattice_.sig_minus();
  sign_law_ = neg_one_power(law / 4);
  shortcut_ = options_.level_one_shortcut && lattice_.is_unimodular();
  odd_ = rank % 2 != 0;
  level_ = group_.level();
  abs_det_ = abs(lattice_.determinant());
  even_d_ = neg_one_power(two_k / 2) * abs_det_;
  if (padding_ < 0) {
    HEEGCONE_REQUIRE(shortcut_, ErrorCode::invalid_argument,
                     "weight below rank/2 is only available for unimodular lattices through the level-one formula");
    return;
  }
  EvenLattice padded = lattice_;
  for (int j = 0; j < padding_; ++j) padded = direct_sum(padded, hyperbolic_plane());
  padded_ = std::make_shared<EvenLattice>(padded);
  counter_ = std::make_shared<RepCounter>(*padded_, options_.rep);
}

void EisensteinSeries::check_index(const Rational& m, const DiscElement& mu) const {
  group_.check(mu);
  HEEGCONE_REQUIRE(m >= 0, ErrorCode::invalid_index, "index m must be non-negative");
  HEEGCONE_REQUIRE(is_integer(m - group_.q_value(mu)), ErrorCode::invalid_index,
                   "m = " + to_string(m) + " is not in Q(mu) + Z for mu = " + group_.format(mu));
}

DiscElement EisensteinSeries::to_padded(const DiscElement& mu) const {
  if (padding_ == 0) return mu;
  RatVector x = group_.representative(mu);
  x.resize(padded_->rank(), Rational(0));
  return counter_->group().from_vector(x);
}

std::int64_t EisensteinSeries::order_of(const DiscElement& mu) const { return group_.order(mu); }

Integer EisensteinSeries::rep_count(const Rational& m, const DiscElement& mu, std::uint64_t p, int nu) const {
  HEEGCONE_REQUIRE(counter_, ErrorCode::invalid_argument, "no local densities on the level-one path");
  return counter_->count_prime_power(m, to_padded(mu), p, nu);
}

Rational EisensteinSeries::normalized_count(const Rational& m, const DiscElement& mu, std::uint64_t p) const {
  int w = w_exponent(m, order_of(mu), p);
  Integer n = rep_count(m, mu, p, w);
  long two_k = checked_int(2 * weight_, "2k");
  return ratio(n, ipow(Integer(p), static_cast<unsigned>(w * (two_k - 1))));
}

EisensteinSeries::OddData EisensteinSeries::odd_data(const Rational& m, const DiscElement& mu) const {
  HEEGCONE_REQUIRE(odd_, ErrorCode::invalid_argument, "odd-branch data requested for even rank");
  std::int64_t d = order_of(mu);
  Rational dm_q = m * d * d;
  HEEGCONE_REQUIRE(is_integer(dm_q) && dm_q > 0, ErrorCode::invalid_index, "d^2 m must be a positive integer");
  Integer dm = dm_q.get_num();
  Integer two_n = 2 * level_;
  OddData out;
  out.f = 1;
  for (auto [p, e] : factor(dm)) {
    if (two_n % p == 0) continue;
    out.f *= ipow(Integer(p), static_cast<unsigned>(e / 2));
  }
  out.m0 = dm / (out.f * out.f);
  int sign;
  if (options_.dprime_sign == DPrimeSign::validated) {
    long t = lattice_.sig_plus() - lattice_.sig_minus() - 1;
    sign = neg_one_power(((t % 4) + 4) % 4 / 2);
  } else {
    long two_k = checked_int(2 * weight_, "2k");
    sign = neg_one_power((two_k + 1) / 2);
  }
  out.dprime = 2 * sign * out.m0 * abs_det_;
  return out;
}

Rational EisensteinSeries::epsilon(const Rational& m, const DiscElement& mu, EpsilonFormula formula,
                                   unsigned extra_primes) const {
  check_index(m, mu);
  HEEGCONE_REQUIRE(m > 0, ErrorCode::invalid_index, "epsilon needs m > 0");
  HEEGCONE_REQUIRE(counter_, ErrorCode::invalid_argument, "no local densities on the level-one path");
  std::int64_t d = order_of(mu);
  Integer dm = Rational(m * d * d).get_num();
  Integer two_n = 2 * level_;
  std::set<std::uint64_t> primes_2n;
  for (auto [p, e] : factor(two_n)) primes_2n.insert(p);

  if (!odd_) {
    long k = checked_int(weight_, "k");
    QuadChar chi(4 * even_d_);
    if (formula == EpsilonFormula::divisor_sum) {
      Rational r = sigma_char(1 - k, dm, chi);
      for (auto p : primes_2n) r *= normalized_count(m, mu, p);
      return r;
    }
    std::set<std::uint64_t> primes = primes_2n;
    for (auto [p, e] : factor(dm)) primes.insert(p);
    for (std::uint64_t p = 2; extra_primes > 0; ++p) {
      if (is_prime(p) && !primes.count(p)) {
        primes.insert(p);
        --extra_primes;
      }
    }
    Rational r = 1;
    for (auto p : primes) {
      Rational denom = 1 - Rational(chi(Integer(p))) * rpow(Rational(p), -k);
      r *= normalized_count(m, mu, p) / denom;
    }
    return r;
  }

  long r_exp = checked_int(weight_ - Rational(1, 2), "k - 1/2");
  OddData od = odd_data(m, mu);
  QuadChar chi(od.dprime);
  if (formula == EpsilonFormula::divisor_sum) {
    QuadChar one(Integer(1));
    Rational sum = 0;
    HEEGCONE_REQUIRE(od.f.fits_ulong_p(), ErrorCode::invalid_argument, "f too large");
    for (auto g : divisors(od.f.get_ui())) {
      int mob = moebius(g);
      if (mob == 0) continue;
      int c = chi(Integer(g));
      if (c == 0) continue;
      sum += Rational(mob * c) * rpow(Rational(g), -r_exp) * sigma_char(1 - 2 * r_exp, od.f / g, one);
    }
    for (auto p : primes_2n) sum *= normalized_count(m, mu, p) / (1 - rpow(Rational(p), -2 * r_exp));
    return sum;
  }
  std::set<std::uint64_t> primes = primes_2n;
  for (auto [p, e] : factor(dm)) primes.insert(p);
  for (std::uint64_t p = 2; extra_primes > 0; ++p) {
    if (is_prime(p) && !primes.count(p)) {
      primes.insert(p);
      --extra_primes;
    }
  }
  Rational r = 1;
  for (auto p : primes) {
    Rational num = 1 - Rational(chi(Integer(p))) * rpow(Rational(p), -r_exp);
    Rational den = 1 - rpow(Rational(p), -2 * r_exp);
    r *= num / den * normalized_count(m, mu, p);
  }
  return r;
}

Symbolic EisensteinSeries::exact_factor(const Rational& m, const DiscElement& mu) const {
  HEEGCONE_REQUIRE(padded_, ErrorCode::invalid_argument, "no local densities on the level-one path");
  int bminus = padded_->sig_minus();
  HEEGCONE_REQUIRE(bminus % 2 == 0, ErrorCode::invalid_argument, "b- of the padded lattice must be even");
  int sgn_b = neg_one_power(bminus / 2);
  Symbolic inv_det = symbolic_sqrt(Rational(1) / Rational(abs_det_));
  if (!odd_) {
    long k = checked_int(weight_, "k");
    Symbolic pre;
    pre.coeff = Rational(ipow(Integer(2), static_cast<unsigned>(k)) * sgn_b) * rpow(m, k - 1) /
                Rational(factorial(static_cast<unsigned>(k - 1)));
    pre.half_pi = static_cast<int>(2 * k);
    Symbolic l = from_l_value(l_value_exact(k, QuadChar(4 * even_d_)));
    return pre * inv_det / l;
  }
  long r = checked_int(weight_ - Rational(1, 2), "k - 1/2");
  OddData od = odd_data(m, mu);
  Symbolic pre;
  // (2 pi)^(r + 1/2) m^(r - 1/2) / Gamma(r + 1/2), Gamma(r + 1/2) = (2r)! sqrt(pi) / (4^r r!)
  pre.coeff = Rational(ipow(Integer(2), static_cast<unsigned>(r)) * sgn_b) * rpow(m, r - 1) *
              Rational(ipow(Integer(4), static_cast<unsigned>(r)) * factorial(static_cast<unsigned>(r))) /
              Rational(factorial(static_cast<unsigned>(2 * r)));
  pre.half_pi = static_cast<int>(2 * r);
  pre = pre * symbolic_sqrt(Rational(2)) * symbolic_sqrt(m) * inv_det;
  Symbolic l = from_l_value(l_value_exact(r, QuadChar(od.dprime)));
  Symbolic z = from_l_value(l_value_exact(2 * r, QuadChar(Integer(1))));
  return pre * l / z;
}

Interval EisensteinSeries::interval_factor(const Rational& m, const DiscElement& mu) const {
  HEEGCONE_REQUIRE(padded_, ErrorCode::invalid_argument, "no local densities on the level-one path");
  int sgn_b = neg_one_power(padded_->sig_minus() / 2);
  Symbolic inv_det = symbolic_sqrt(Rational(1) / Rational(abs_det_));
  const Rational& width = options_.l_width;
  if (!odd_) {
    long k = checked_int(weight_, "k");
    Symbolic pre;
    pre.coeff = Rational(ipow(Integer(2), static_cast<unsigned>(k)) * sgn_b) * rpow(m, k - 1) /
                Rational(factorial(static_cast<unsigned>(k - 1)));
    pre.half_pi = static_cast<int>(2 * k);
    return (pre * inv_det).enclose() / l_value_interval(Rational(k), QuadChar(4 * even_d_), width);
  }
  long r = checked_int(weight_ - Rational(1, 2), "k - 1/2");
  OddData od = odd_data(m, mu);
  Symbolic pre;
  pre.coeff = Rational(ipow(Integer(2), static_cast<unsigned>(r)) * sgn_b) * rpow(m, r - 1) *
              Rational(ipow(Integer(4), static_cast<unsigned>(r)) * factorial(static_cast<unsigned>(r))) /
              Rational(factorial(static_cast<unsigned>(2 * r)));
  pre.half_pi = static_cast<int>(2 * r);
  pre = pre * symbolic_sqrt(Rational(2)) * symbolic_sqrt(m) * inv_det;
  Interval l = l_value_interval(Rational(r), QuadChar(od.dprime), width);
  Interval z = l_value_interval(Rational(2 * r), QuadChar(Integer(1)), width);
  return pre.enclose() * l / z;
}

Coefficient EisensteinSeries::shortcut_coefficient(const Rational& m, const DiscElement& mu) const {
  Coefficient c;
  c.m = m;
  c.mu = mu;
  long k = checked_int(weight_, "k");
  HEEGCONE_REQUIRE(is_integer(m), ErrorCode::invalid_index, "unimodular index must be integral");
  c.value = -Rational(2 * k) / bernoulli(static_cast<unsigned>(k)) *
            Rational(sigma(static_cast<unsigned>(k - 1), m.get_num()));
  c.enclosure = Interval(c.value);
  return c;
}

Coefficient EisensteinSeries::coefficient(const Rational& m, const DiscElement& mu) const {
  return coefficient(m, mu, options_.mode);
}

Coefficient EisensteinSeries::coefficient(const Rational& m, const DiscElement& mu, CoefficientMode mode) const {
  check_index(m, mu);
  Coefficient c;
  c.m = m;
  c.mu = mu;
  if (m == 0) {
    c.value = group_.is_zero(mu) ? 1 : 0;
    c.enclosure = Interval(c.value);
    return c;
  }
  if (shortcut_) return shortcut_coefficient(m, mu);
  Rational eps = epsilon(m, mu, EpsilonFormula::divisor_sum);
  if (mode == CoefficientMode::exact) {
    try {
      Symbolic s = exact_factor(m, mu);
      HEEGCONE_REQUIRE(s.is_rational(), ErrorCode::parity_unsupported,
                       "transcendental factor does not cancel: " + s.str());
      c.value = s.coeff * eps;
      c.enclosure = Interval(c.value);
      return c;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::parity_unsupported || !options_.interval_fallback) throw;
    }
  }
  c.exact = false;
  c.enclosure = interval_factor(m, mu) * Interval(eps);
  return c;
}

VectorQSeries EisensteinSeries::qexp(const Rational& max_exponent, unsigned jobs) const {
  HEEGCONE_REQUIRE(max_exponent >= 0, ErrorCode::invalid_argument, "precision must be non-negative");
  struct Task {
    std::size_t component;
    long shift;
  };
  std::vector<VectorQSeries::Component> comps;
  std::vector<Task> tasks;
  std::vector<DiscElement> elems = group_.elements();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    VectorQSeries::Component c;
    c.offset = group_.q_value(elems[i]);
    c.first = 0;
    long count = 0;
    while (c.offset + count <= max_exponent) ++count;
    c.coeffs.assign(static_cast<std::size_t>(count), Rational(0));
    for (long n = 0; n < count; ++n) tasks.push_back({i, n});
    comps.push_back(std::move(c));
  }
  std::vector<Rational> values(tasks.size());
  parallel_for(tasks.size(), jobs, [&](std::size_t t) {
    const Task& task = tasks[t];
    Rational m = comps[task.component].offset + task.shift;
    Coefficient c = coefficient(m, elems[task.component], CoefficientMode::exact);
    HEEGCONE_REQUIRE(c.exact, ErrorCode::parity_unsupported, "q-expansion needs exact coefficients");
    values[t] = c.value;
  });
  for (std::size_t t = 0; t < tasks.size(); ++t)
    comps[tasks[t].component].coeffs[static_cast<std::size_t>(tasks[t].shift)] = values[t];
  return VectorQSeries(lattice_.name(), weight_, group_.orders(), max_exponent, std::move(comps));
}

Rational epsilon(const EvenLattice& lattice, const Rational& k, const Rational& m, const DiscElement& mu,
                 EpsilonFormula formula) {
  EisensteinOptions opts;
  opts.level_one_shortcut = false;
  return EisensteinSeries(lattice, k, opts).epsilon(m, mu, formula);
}

Coefficient eis_coefficient(const EvenLattice& lattice, const Rational& k, const Rational& m, const DiscElement& mu,
                            CoefficientMode mode) {
  EisensteinOptions opts;
  opts.mode = mode;
  return EisensteinSeries(lattice, k, opts).coefficient(m, mu);
}

VectorQSeries eis_qexp(const EvenLattice& lattice, const Rational& k, const Rational& max_exponent,
                       const EisensteinOptions& options, unsigned jobs) {
  return EisensteinSeries(lattice, k, options).qexp(max_exponent, jobs);
}

}  // namespace heegcone
