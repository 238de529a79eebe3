#include "heegcone/numeric.hpp"

#include "heegcone/error.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace heegcone {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::degenerate_lattice: return "degenerate_lattice";
    case ErrorCode::budget_exceeded: return "budget_exceeded";
    case ErrorCode::parity_unsupported: return "parity_unsupported";
    case ErrorCode::invalid_index: return "invalid_index";
    case ErrorCode::non_positive_index: return "non_positive_index";
    case ErrorCode::coverage: return "coverage";
    case ErrorCode::relation_failed: return "relation_failed";
    case ErrorCode::parse: return "parse";
    case ErrorCode::check_failed: return "check_failed";
  }
  return "unknown";
}

Factorization factor(std::uint64_t n) {
  HEEGCONE_REQUIRE(n > 0, ErrorCode::invalid_argument, "factor: n must be positive");
  Factorization out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

Factorization factor(const Integer& n) {
  Integer a = abs(n);
  HEEGCONE_REQUIRE(a > 0, ErrorCode::invalid_argument, "factor: n must be nonzero");
  if (a.fits_ulong_p()) return factor(static_cast<std::uint64_t>(a.get_ui()));
  Factorization out;
  for (std::uint64_t p = 2; Integer(p) * p <= a; p += (p == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(a.get_mpz_t(), p) == 0) continue;
    int e = 0;
    while (mpz_divisible_ui_p(a.get_mpz_t(), p) != 0) {
      a /= p;
      ++e;
    }
    out.emplace_back(p, e);
    if (a.fits_ulong_p()) {
      for (auto& pe : factor(static_cast<std::uint64_t>(a.get_ui()))) out.push_back(pe);
      return out;
    }
  }
  HEEGCONE_REQUIRE(a == 1, ErrorCode::budget_exceeded, "factor: cofactor too large");
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out{1};
  for (auto [p, e] : factor(n)) {
    const std::size_t base = out.size();
    std::uint64_t pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

const std::vector<std::uint32_t>& primes_up_to(std::uint32_t limit) {
  static std::mutex guard;
  static std::map<std::uint32_t, std::vector<std::uint32_t>> cache;
  std::lock_guard lock(guard);
  auto it = cache.find(limit);
  if (it != cache.end()) return it->second;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return cache.emplace(limit, std::move(primes)).first->second;
}

int valuation(const Integer& n, std::uint64_t p) {
  if (n == 0) return infinite_valuation;
  Integer a = abs(n);
  int v = 0;
  while (mpz_divisible_ui_p(a.get_mpz_t(), p) != 0) {
    a /= p;
    ++v;
  }
  return v;
}

int valuation(const Rational& q, std::uint64_t p) {
  if (q == 0) return infinite_valuation;
  return valuation(Integer(q.get_num()), p) - valuation(Integer(q.get_den()), p);
}

Integer ipow(const Integer& base, unsigned exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

std::uint64_t ipow_u64(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

Rational rpow(const Rational& base, long exp) {
  if (exp >= 0) {
    Rational r(ipow(base.get_num(), static_cast<unsigned>(exp)),
               ipow(base.get_den(), static_cast<unsigned>(exp)));
    r.canonicalize();
    return r;
  }
  HEEGCONE_REQUIRE(base != 0, ErrorCode::invalid_argument, "rpow: zero to a negative power");
  return 1 / rpow(base, -exp);
}

Integer mod(const Integer& n, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
  return r;
}

std::int64_t mod(std::int64_t n, std::int64_t m) {
  const std::int64_t r = n % m;
  return r < 0 ? r + m : r;
}

Rational ratio(const Integer& num, const Integer& den) {
  HEEGCONE_REQUIRE(den != 0, ErrorCode::invalid_argument, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational frac(const Rational& q) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return q - fl;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.pop_back();
  std::size_t start = s.find_first_not_of(" \t");
  HEEGCONE_REQUIRE(start != std::string::npos, ErrorCode::parse, "empty rational");
  s = s.substr(start);
  const auto slash = s.find('/');
  auto parse_int = [](const std::string& t) {
    HEEGCONE_REQUIRE(!t.empty(), ErrorCode::parse, "empty integer field");
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    HEEGCONE_REQUIRE(i < t.size(), ErrorCode::parse, "malformed integer '" + t + "'");
    for (; i < t.size(); ++i)
      HEEGCONE_REQUIRE(t[i] >= '0' && t[i] <= '9', ErrorCode::parse,
                       "malformed integer '" + t + "'");
    return Integer(t[0] == '+' ? t.substr(1) : t);
  };
  if (slash == std::string::npos) return Rational(parse_int(s));
  Integer num = parse_int(s.substr(0, slash));
  Integer den = parse_int(s.substr(slash + 1));
  HEEGCONE_REQUIRE(den != 0, ErrorCode::parse, "zero denominator in '" + s + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::pair<Integer, Integer> squarefree_split(const Integer& n) {
  HEEGCONE_REQUIRE(n > 0, ErrorCode::invalid_argument, "squarefree_split: n must be positive");
  Integer core = 1, square = 1;
  for (auto [p, e] : factor(n)) {
    if (e % 2 == 1) core *= p;
    square *= ipow(Integer(p), static_cast<unsigned>(e / 2));
  }
  return {core, square};
}

}  // namespace heegcone
