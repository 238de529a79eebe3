#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace heegcone {

using Integer = mpz_class;
using Rational = mpq_class;

/// Prime factorization as (prime, exponent) pairs in increasing order.
using Factorization = std::vector<std::pair<std::uint64_t, int>>;

Factorization factor(std::uint64_t n);
Factorization factor(const Integer& n);
std::vector<std::uint64_t> divisors(std::uint64_t n);

bool is_prime(std::uint64_t n);

/// Primes up to `limit` (inclusive). Results are cached write-once.
const std::vector<std::uint32_t>& primes_up_to(std::uint32_t limit);

/// p-adic valuation; the valuation of 0 is reported as `infinite_valuation`.
inline constexpr int infinite_valuation = 1 << 29;
int valuation(const Integer& n, std::uint64_t p);
int valuation(const Rational& q, std::uint64_t p);

Integer ipow(const Integer& base, unsigned exp);
std::uint64_t ipow_u64(std::uint64_t base, unsigned exp);
/// base^exp for any integer exponent (negative exponents give 1/base^|exp|).
Rational rpow(const Rational& base, long exp);

/// Non-negative residue of n modulo m (m > 0).
Integer mod(const Integer& n, const Integer& m);
std::int64_t mod(std::int64_t n, std::int64_t m);

/// num/den in canonical form (den != 0).
Rational ratio(const Integer& num, const Integer& den);

/// Representative of q modulo 1 in [0, 1).
Rational frac(const Rational& q);
bool is_integer(const Rational& q);

Integer lcm(const Integer& a, const Integer& b);

/// Exact "p/q" (or "p" when q == 1) rendering, never a float.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);
Rational parse_rational(std::string_view text);

/// Squarefree decomposition n = core * square^2 for n > 0.
std::pair<Integer, Integer> squarefree_split(const Integer& n);

}  // namespace heegcone
