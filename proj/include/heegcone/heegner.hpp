#pragma once

#include "heegcone/discriminant.hpp"
#include "heegcone/interval.hpp"
#include "heegcone/qseries.hpp"

#include <map>
#include <string>
#include <vector>

namespace heegcone {

class EisensteinSeries;

/// (m, mu) with m > 0 and m in Q(mu) + Z.
struct HeegnerIndex {
  Rational m;
  DiscElement mu;

  friend bool operator==(const HeegnerIndex& a, const HeegnerIndex& b) { return a.m == b.m && a.mu == b.mu; }
  /// Canonical order: by m, then by mu.
  friend bool operator<(const HeegnerIndex& a, const HeegnerIndex& b) {
    if (a.m != b.m) return a.m < b.m;
    return a.mu < b.mu;
  }
};

HeegnerIndex make_index(const DiscGroup& group, const Rational& m, const DiscElement& mu);
std::string format_index(const DiscGroup& group, const HeegnerIndex& index);

enum class DivisorBasis { H, P };

/// Finite integer combination of H_{m,mu} or of P_{Delta,delta}.
class FormalDivisor {
 public:
  explicit FormalDivisor(DivisorBasis basis = DivisorBasis::H) : basis_(basis) {}

  DivisorBasis basis() const { return basis_; }
  const std::map<HeegnerIndex, Integer>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  Integer coefficient(const HeegnerIndex& index) const;
  void add(const HeegnerIndex& index, const Integer& coeff);
  FormalDivisor& operator+=(const FormalDivisor& other);

  friend bool operator==(const FormalDivisor& a, const FormalDivisor& b) {
    return a.basis_ == b.basis_ && a.terms_ == b.terms_;
  }
  std::string str(const DiscGroup& group) const;

 private:
  DivisorBasis basis_;
  std::map<HeegnerIndex, Integer> terms_;
};

/// All (r, sigma) with r sigma = mu and m / r^2 in Q(sigma) + Z.
std::vector<std::pair<std::int64_t, DiscElement>> square_divisors(const DiscGroup& group, const HeegnerIndex& index);

/// P_{Delta,delta} = sum_r moebius(r) sum_{r sigma = delta} H_{Delta/r^2, sigma}.
FormalDivisor expand_P_in_H(const DiscGroup& group, const HeegnerIndex& index);
/// H_{m,mu} = sum_r sum_{r delta = mu} P_{m/r^2, delta}.
FormalDivisor expand_H_in_P(const DiscGroup& group, const HeegnerIndex& index);
/// Linear extension of the two expansions to arbitrary divisors.
FormalDivisor to_H_basis(const DiscGroup& group, const FormalDivisor& divisor);
FormalDivisor to_P_basis(const DiscGroup& group, const FormalDivisor& divisor);

/// 2 if 2 delta = 0, else 1.
int multiplicity(const DiscGroup& group, const DiscElement& delta);

/// Noether-Lefschetz index (h, a) on K3(d) -> (m, mu) with m = a^2/4d - (h - 1).
HeegnerIndex k3_index_convert(long d, long h, long a);
struct NLIndex {
  long h = 0;
  long a = 0;
};
NLIndex k3_index_inverse(long d, const HeegnerIndex& index);

/// Vector-valued cusp forms of weight k for L, with a validation marker.
struct CuspBasis {
  std::vector<VectorQSeries> forms;
  bool validated = false;

  std::size_t size() const { return forms.size(); }
};

/// gamma = -(class functional on E_{k,L}), s_j = value on the j-th basis form.
struct DivisorClass {
  Rational gamma;
  bool gamma_exact = true;
  Interval gamma_enclosure;
  RatVector s;
};

DivisorClass divisor_class(const EisensteinSeries& eis, const FormalDivisor& divisor, const CuspBasis& basis);
DivisorClass divisor_class(const EisensteinSeries& eis, const HeegnerIndex& index, const CuspBasis& basis);
/// The class of -c_{0,0}: gamma = 1, s = 0.
DivisorClass hodge_class(std::size_t basis_size);

}  // namespace heegcone
