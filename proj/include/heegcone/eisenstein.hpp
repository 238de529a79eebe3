#pragma once

#include "heegcone/arith.hpp"
#include "heegcone/discriminant.hpp"
#include "heegcone/interval.hpp"
#include "heegcone/lattice.hpp"
#include "heegcone/qseries.hpp"
#include "heegcone/repnum.hpp"

#include <memory>
#include <string>

namespace heegcone {

enum class EpsilonFormula { euler_product, divisor_sum };
enum class CoefficientMode { exact, interval };
/// Sign inside D' = 2 s m0 |D_L| for odd rank: validated uses s = (-1)^((b+ - b- - 1)/2),
/// literal uses s = (-1)^((b+ + b- + 1)/2) as printed (fails rationality).
enum class DPrimeSign { validated, literal };

std::string to_string(EpsilonFormula f);
std::string to_string(CoefficientMode m);
CoefficientMode parse_mode(const std::string& text);

struct EisensteinOptions {
  CoefficientMode mode = CoefficientMode::exact;
  /// Unimodular L: e(m, 0) = -(2k / B_k) sigma_{k-1}(m) without local densities.
  bool level_one_shortcut = true;
  DPrimeSign dprime_sign = DPrimeSign::validated;
  /// Exact mode falls back to interval mode on a parity obstruction instead of throwing.
  bool interval_fallback = false;
  /// Width of the L-value enclosures used by interval mode.
  Rational l_width{Rational(1, 1000000) * Rational(1, 1000000)};
  RepOptions rep;
};

/// Exact value or certified enclosure of e_{k,L}(m, mu).
struct Coefficient {
  Rational m;
  DiscElement mu;
  bool exact = true;
  Rational value;
  Interval enclosure;

  /// Sign of the value; 2 if an enclosure straddles 0.
  int sign() const;
  Interval as_interval() const { return exact ? Interval(value) : enclosure; }
  std::string value_str() const;
};

/// rational * pi^(half_pi / 2) * sqrt(radicand), radicand squarefree.
struct Symbolic {
  Rational coeff{1};
  int half_pi = 0;
  Integer radicand{1};

  bool is_rational() const { return half_pi == 0 && radicand == 1; }
  Interval enclose(int bits = default_interval_bits) const;
  std::string str() const;
};
Symbolic operator*(const Symbolic& a, const Symbolic& b);
Symbolic operator/(const Symbolic& a, const Symbolic& b);
Symbolic symbolic_sqrt(const Rational& x);
Symbolic symbolic_pi_power(int half_pi);

/// E_{k,L} for 2k = b+ - b- mod 4. Weights above rank/2 are handled through L + U^j,
/// which has the same discriminant form.
class EisensteinSeries {
 public:
  EisensteinSeries(const EvenLattice& lattice, const Rational& weight, EisensteinOptions options = {});

  const EvenLattice& lattice() const { return lattice_; }
  const DiscGroup& group() const { return group_; }
  const Rational& weight() const { return weight_; }
  const EisensteinOptions& options() const { return options_; }
  int padding() const { return padding_; }
  /// (-1)^((2k - b+ + b-) / 4): every coefficient times this is >= 0.
  int sign_law() const { return sign_law_; }
  bool uses_shortcut() const { return shortcut_; }

  /// N_{m,mu}(p^nu) on the padded lattice.
  Integer rep_count(const Rational& m, const DiscElement& mu, std::uint64_t p, int nu) const;
  Rational epsilon(const Rational& m, const DiscElement& mu, EpsilonFormula formula,
                   unsigned extra_primes = 0) const;
  Coefficient coefficient(const Rational& m, const DiscElement& mu) const;
  Coefficient coefficient(const Rational& m, const DiscElement& mu, CoefficientMode mode) const;
  /// Exact-mode prefactor times 1/L or L/zeta, before epsilon.
  Symbolic exact_factor(const Rational& m, const DiscElement& mu) const;
  /// m0, f and D' of the odd branch.
  struct OddData {
    Integer m0;
    Integer f;
    Integer dprime;
  };
  OddData odd_data(const Rational& m, const DiscElement& mu) const;
  Integer even_discriminant() const { return even_d_; }
  bool odd_rank() const { return odd_; }

  /// All coefficients with 0 <= m <= max_exponent; jobs worker threads.
  VectorQSeries qexp(const Rational& max_exponent, unsigned jobs = 1) const;

 private:
  void check_index(const Rational& m, const DiscElement& mu) const;
  DiscElement to_padded(const DiscElement& mu) const;
  std::int64_t order_of(const DiscElement& mu) const;
  Rational normalized_count(const Rational& m, const DiscElement& mu, std::uint64_t p) const;
  Coefficient shortcut_coefficient(const Rational& m, const DiscElement& mu) const;
  Interval interval_factor(const Rational& m, const DiscElement& mu) const;

  EvenLattice lattice_;
  DiscGroup group_;
  Rational weight_;
  EisensteinOptions options_;
  int padding_ = 0;
  int sign_law_ = 1;
  bool shortcut_ = false;
  bool odd_ = false;
  Integer level_;
  Integer abs_det_;
  Integer even_d_;
  std::shared_ptr<EvenLattice> padded_;
  std::shared_ptr<RepCounter> counter_;
};

Rational epsilon(const EvenLattice& lattice, const Rational& k, const Rational& m, const DiscElement& mu,
                 EpsilonFormula formula);
Coefficient eis_coefficient(const EvenLattice& lattice, const Rational& k, const Rational& m, const DiscElement& mu,
                            CoefficientMode mode = CoefficientMode::exact);
VectorQSeries eis_qexp(const EvenLattice& lattice, const Rational& k, const Rational& max_exponent,
                       const EisensteinOptions& options = {}, unsigned jobs = 1);

}  // namespace heegcone
