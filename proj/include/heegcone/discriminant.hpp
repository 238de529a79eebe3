#pragma once

#include "heegcone/lattice.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace heegcone {

/// Element of D_L in Smith-basis coordinates, each reduced mod its generator order.
struct DiscElement {
  std::vector<std::int64_t> coords;
  auto operator<=>(const DiscElement&) const = default;
};

/// Finite quadratic module D_L = L'/L.
class DiscGroup {
 public:
  explicit DiscGroup(const EvenLattice& lattice);

  /// Elementary divisors > 1, in Smith order (each divides the next).
  const std::vector<std::int64_t>& orders() const { return orders_; }
  std::uint64_t size() const { return size_; }
  std::int64_t level() const { return level_; }
  std::int64_t exponent() const { return orders_.empty() ? 1 : orders_.back(); }

  DiscElement zero() const;
  /// Lexicographic enumeration (first coordinate most significant).
  DiscElement element(std::uint64_t index) const;
  std::uint64_t index_of(const DiscElement& mu) const;
  std::vector<DiscElement> elements() const;

  DiscElement add(const DiscElement& a, const DiscElement& b) const;
  DiscElement negate(const DiscElement& a) const;
  DiscElement scale(std::int64_t r, const DiscElement& a) const;
  std::int64_t order(const DiscElement& mu) const;
  bool is_zero(const DiscElement& mu) const;

  /// Q(mu) in [0, 1).
  Rational q_value(const DiscElement& mu) const;
  /// (mu, nu) mod 1 in [0, 1).
  Rational pairing(const DiscElement& a, const DiscElement& b) const;

  /// Coset representative in L' with coordinates in [0, 1).
  RatVector representative(const DiscElement& mu) const;
  /// Class of a dual-lattice vector; throws if x is not in L'.
  DiscElement from_vector(const RatVector& x) const;

  /// Kernel K_r of multiplication by r.
  std::vector<DiscElement> kernel(std::int64_t r) const;
  std::uint64_t kernel_size(std::int64_t r) const;
  /// All sigma with r * sigma = delta, solved per cyclic factor.
  std::vector<DiscElement> solve_multiple(std::int64_t r, const DiscElement& delta) const;

  void check(const DiscElement& mu) const;
  std::string format(const DiscElement& mu) const;

 private:
  IntMatrix gram_;
  std::vector<std::int64_t> orders_;
  std::vector<RatVector> generators_;  // generator vectors g_i in L' (lattice coordinates)
  std::vector<RatVector> vinv_rows_;   // rows of V^{-1} for the nontrivial factors
  std::vector<Rational> gen_q_;
  std::vector<std::vector<Rational>> gen_pair_;
  std::uint64_t size_ = 1;
  std::int64_t level_ = 1;
};

/// Smith normal form S = U G V; returns diagonal entries and V, V^{-1}.
struct SmithForm {
  std::vector<Integer> diagonal;
  IntMatrix v;
  IntMatrix v_inverse;
};
SmithForm smith_normal_form(const IntMatrix& m);

}  // namespace heegcone
