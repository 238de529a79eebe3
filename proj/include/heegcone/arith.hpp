#pragma once

#include "heegcone/interval.hpp"
#include "heegcone/numeric.hpp"

#include <cstdint>
#include <string>

namespace heegcone {

/// Kronecker symbol (D/n), Cohen's conventions for n <= 0 and n even.
int kronecker(const Integer& D, const Integer& n);
int moebius(std::uint64_t n);

/// chi_D = (D/.) for D = 0, 1 mod 4; periodic mod |D|.
class QuadChar {
 public:
  explicit QuadChar(const Integer& D);

  const Integer& discriminant() const { return D_; }
  /// Fundamental discriminant D0 with D = D0 c^2.
  const Integer& fundamental() const { return D0_; }
  const Integer& cofactor() const { return c_; }
  Integer conductor() const { return abs(D0_); }
  Integer modulus() const { return abs(D_); }
  bool is_principal() const { return D0_ == 1; }
  /// chi(-1).
  int parity() const { return D_ > 0 ? 1 : -1; }
  int operator()(const Integer& n) const { return kronecker(D_, n); }
  int operator()(long n) const { return kronecker(D_, Integer(n)); }

 private:
  Integer D_;
  Integer D0_;
  Integer c_;
};

/// sigma_s(a, chi) = sum_{d | a} chi(d) d^s.
Rational sigma_char(long s, const Integer& a, const QuadChar& chi);
/// Plain divisor sum sigma_s(a) for s >= 0.
Integer sigma(unsigned s, const Integer& a);

/// Bernoulli numbers with B_1 = -1/2.
Rational bernoulli(unsigned n);
Rational bernoulli_polynomial(unsigned n, const Rational& x);
/// B_{n,chi} = f^{n-1} sum_{a=1..f} chi(a) B_n(a/f), f = |D|.
Rational gen_bernoulli(unsigned n, const QuadChar& chi);

/// rational * pi^pi_exponent * sqrt(sqrt_content), sqrt_content squarefree.
struct ExactLValue {
  Rational rational;
  int pi_exponent = 0;
  Integer sqrt_content{1};

  Interval enclose(int bits = default_interval_bits) const;
  std::string str() const;
};

/// L(s, chi) for integer s: s >= 1 needs chi(-1) = (-1)^s (else parity_unsupported);
/// s <= 0 uses -B_{1-s,chi}/(1-s). s = 1 with principal chi is rejected.
ExactLValue l_value_exact(long s, const QuadChar& chi);

/// Certified enclosure of L(s, chi) for rational s > 1 with width <= width.
Interval l_value_interval(const Rational& s, const QuadChar& chi, const Rational& width);

enum class EulerConstant { landau, artin, cone_bound };
/// prod_p (1 + 1/(p(p-1))), prod_p (1 - 1/(p(p-1))) and 1 - (landau - artin)/2.
Interval euler_product_constant(EulerConstant kind, const Rational& width);

}  // namespace heegcone
