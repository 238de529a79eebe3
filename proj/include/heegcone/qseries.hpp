#pragma once

#include "heegcone/discriminant.hpp"
#include "heegcone/lattice.hpp"

#include <string>
#include <vector>

namespace heegcone {

/// Truncated Laurent series sum_{n=start}^{max_exponent} c_n q^n with exact coefficients.
class ScalarQSeries {
 public:
  ScalarQSeries() = default;
  ScalarQSeries(long start, std::vector<Rational> coeffs);

  long start() const { return start_; }
  long max_exponent() const { return start_ + static_cast<long>(coeffs_.size()) - 1; }
  /// Coefficient at q^n: zero below start, coverage error above max_exponent.
  Rational operator[](long n) const;
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  /// Drops exponents above `max_exponent`.
  ScalarQSeries truncated(long max_exponent) const;
  /// Smallest exponent with a nonzero coefficient (start when all vanish).
  long valuation() const;

  ScalarQSeries& operator*=(const Rational& c);
  friend ScalarQSeries operator+(const ScalarQSeries& a, const ScalarQSeries& b);
  friend ScalarQSeries operator-(const ScalarQSeries& a, const ScalarQSeries& b);
  friend ScalarQSeries operator*(const ScalarQSeries& a, const ScalarQSeries& b);
  ScalarQSeries inverse() const;
  ScalarQSeries pow(long e) const;

  std::string str(long terms = 8) const;

 private:
  long start_ = 0;
  std::vector<Rational> coeffs_;
};

/// Delta^c = q^c prod (1 - q^n)^(24c) through exponent max_exponent.
ScalarQSeries delta_power(long c, long max_exponent);
/// E_k = 1 - (2k / B_k) sum sigma_{k-1}(n) q^n for even k >= 4.
ScalarQSeries scalar_eisenstein(unsigned k, long max_exponent);
/// 1 / prod (1 - q^n): partition numbers.
ScalarQSeries partition_series(long max_exponent);

/// D_L-graded series: component mu has exponents offset_mu + n, offset_mu in [0, 1).
class VectorQSeries {
 public:
  struct Component {
    Rational offset;
    long first = 0;  // exponent of coeffs[0] is offset + first
    std::vector<Rational> coeffs;
  };

  VectorQSeries() = default;
  VectorQSeries(std::string lattice_ref, Rational weight, std::vector<std::int64_t> orders, Rational max_exponent,
                std::vector<Component> components);

  const std::string& lattice_ref() const { return lattice_ref_; }
  const Rational& weight() const { return weight_; }
  const std::vector<std::int64_t>& orders() const { return orders_; }
  const Rational& max_exponent() const { return max_exponent_; }
  const std::vector<Component>& components() const { return components_; }
  std::size_t size() const { return components_.size(); }

  /// Coefficient of q^exponent in component `index` (lexicographic D_L order).
  /// Zero below the stored range; coverage error above max_exponent or off the coset.
  Rational coefficient(std::size_t index, const Rational& exponent) const;
  Rational coefficient(const DiscElement& mu, const Rational& exponent) const {
    return coefficient(index_of(mu), exponent);
  }
  /// Lexicographic position of mu in the grading.
  std::size_t index_of(const DiscElement& mu) const;
  bool covers(const Rational& exponent) const { return exponent <= max_exponent_; }

  /// Componentwise product with a scalar series; the result keeps exponents <= bound.
  VectorQSeries times(const ScalarQSeries& f, const Rational& bound) const;

  void set_weight(const Rational& k) { weight_ = k; }

 private:
  std::string lattice_ref_;
  Rational weight_;
  std::vector<std::int64_t> orders_;
  Rational max_exponent_;
  std::vector<Component> components_;
};

inline constexpr std::uint64_t default_search_points = std::uint64_t{1} << 24;

struct CosetNorm {
  Rational value;
  bool exact = true;  // false: an upper bound from a bounded search
};

/// t_mu = min{-Q(l) : l in mu + L, -Q(l) > 0}.
CosetNorm coset_min_norm(const EvenLattice& lattice, const DiscGroup& group, const DiscElement& mu, int search_radius = 2);
/// T = max_mu t_mu.
CosetNorm max_min_norm(const EvenLattice& lattice, int search_radius = 2);

}  // namespace heegcone
