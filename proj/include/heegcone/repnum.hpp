#pragma once

#include "heegcone/discriminant.hpp"
#include "heegcone/lattice.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

namespace heegcone {

inline constexpr std::uint64_t default_enumeration_cap = std::uint64_t{1} << 26;

/// Entry j counts x in (block)/a(block) with Q(x + mu_block) = j + const (mod a).
using ResidueHistogram = std::vector<Integer>;

struct RepOptions {
  std::uint64_t cap = default_enumeration_cap;
  /// Closed forms for U blocks and for E8 at p = 2 (E8 and U^4 are isometric over Z_2).
  /// When false every block goes through diagonalization or enumeration.
  bool closed_forms = true;
};

/// w_p = 1 + 2 ord_p(2 d_mu m), with ord_p(2 d_mu m) read as ord_p(2 d_mu^2 m) - ord_p(d_mu).
int w_exponent(const Rational& m, std::int64_t d_mu, std::uint64_t p);

Integer rep_count_U(const Integer& m, std::uint64_t p, int nu);
Integer rep_count_UU(const Integer& m, std::uint64_t p, int nu);

/// Full enumeration of L/aL. `mu` is any representative of the coset in L'.
Integer rep_count_bruteforce(const EvenLattice& lattice, const Rational& m, const RatVector& mu, const Integer& a,
                             std::uint64_t cap = default_enumeration_cap);

/// Histogram of x -> Q(x) + g.x mod a over (Z/a)^n by enumeration.
std::vector<std::uint64_t> histogram_bruteforce(const IntMatrix& gram, const IntVector& g, std::uint64_t a,
                                                std::uint64_t cap = default_enumeration_cap);
/// Same histogram for odd p via congruent diagonalization mod a = p^nu.
ResidueHistogram histogram_diagonal(const IntMatrix& gram, const IntVector& g, std::uint64_t p, int nu);

/// Representation numbers of one lattice, with a histogram cache shared across calls.
/// Thread-safe; results do not depend on call order.
class RepCounter {
 public:
  explicit RepCounter(const EvenLattice& lattice, RepOptions options = {});

  const EvenLattice& lattice() const { return lattice_; }
  const DiscGroup& group() const { return group_; }
  const RepOptions& options() const { return options_; }

  /// N_{m,mu}(p^nu) through the block convolution engine.
  Integer count_prime_power(const Rational& m, const DiscElement& mu, std::uint64_t p, int nu) const;
  /// N_{m,mu}(a) as a product over the prime powers of a.
  Integer count(const Rational& m, const DiscElement& mu, const Integer& a) const;
  /// Entry j is N_{Q(mu) + j, mu}(p^nu) with Q(mu) taken in [0, 1).
  ResidueHistogram histogram(const DiscElement& mu, std::uint64_t p, int nu) const;
  Integer bruteforce(const Rational& m, const DiscElement& mu, const Integer& a) const;

 private:
  struct Split;
  std::shared_ptr<const Split> split(const DiscElement& mu, std::uint64_t p, int nu) const;
  ResidueHistogram block_histogram(const Block& block, const IntVector& g, std::uint64_t p, int nu) const;
  Integer target(const Rational& m, const DiscElement& mu) const;

  EvenLattice lattice_;
  DiscGroup group_;
  RepOptions options_;
  mutable std::mutex mutex_;
  mutable std::map<std::tuple<std::uint64_t, std::uint64_t, int>, std::shared_ptr<const Split>> splits_;
  mutable std::map<std::tuple<IntMatrix, IntVector, std::uint64_t, int>, std::shared_ptr<const ResidueHistogram>>
      blocks_;
};

Integer rep_count_prime_power(const EvenLattice& lattice, const Rational& m, const DiscElement& mu, std::uint64_t p,
                              int nu, const RepOptions& options = {});
Integer rep_count(const EvenLattice& lattice, const Rational& m, const DiscElement& mu, const Integer& a,
                  const RepOptions& options = {});

}  // namespace heegcone
