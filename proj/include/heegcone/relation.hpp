#pragma once

#include "heegcone/eisenstein.hpp"
#include "heegcone/heegner.hpp"
#include "heegcone/qseries.hpp"

#include <string>
#include <vector>

namespace heegcone {

struct RelationTerm {
  HeegnerIndex index;
  Rational lambda;
};

/// sum lambda_i c_{m_i,mu_i} = 0 on cusp forms, lambda_i = c_{-m_i,mu_i}(h).
struct RelationCertificate {
  std::vector<RelationTerm> terms;
  long B = 0;
  Rational k_prime;
  CosetNorm t_hat;
  /// c_{0,0}(h); equals sum lambda_i gamma_i.
  Rational constant_term;
};

/// h = Delta^(-B) E_{k',L^-} with k' = 2 - k + 12B, graded by D_{L^-}.
struct HForm {
  VectorQSeries series;
  long B = 0;
  Rational k_prime;
  CosetNorm t_hat;
};

Rational h_weight(const Rational& k, long B);
/// Smallest B with k' > 2 and B - T_hat >= span_target.
long default_B(const EvenLattice& lattice, const Rational& k, long span_target = 2);

HForm build_h(const EvenLattice& lattice, const Rational& k, long B, long max_exponent,
              const EisensteinOptions& options = {}, unsigned jobs = 1);

struct PositivityReport {
  bool nonnegative = true;
  bool strict = true;
  Rational strict_from;  // T_hat - B
  std::size_t checked = 0;
  std::vector<std::string> failures;

  bool passed() const { return nonnegative && strict; }
};
PositivityReport check_h_positivity(const HForm& h, const DiscGroup& minus_group);

/// Principal part of h read as a certificate on D_L.
RelationCertificate principal_relation(const EvenLattice& lattice, const HForm& h);
RelationCertificate principal_relation(const EvenLattice& lattice, const Rational& k, long B,
                                       const EisensteinOptions& options = {}, unsigned jobs = 1);

/// Level-one scalar version h = Delta^(-B) E_{k'}; indices carry the empty element.
ScalarQSeries scalar_h(unsigned k, long B, long max_exponent);
RelationCertificate scalar_relation(unsigned k, long B);

/// sum lambda_i a_{m_i,mu_i}(g).
Rational residue_pair(const RelationCertificate& cert, const VectorQSeries& g);
Rational residue_pair(const RelationCertificate& cert, const ScalarQSeries& g);

/// Level-one cusp forms Delta E4^a E6^b of weight k, lifted to a unimodular lattice.
std::vector<ScalarQSeries> level_one_cusp_basis(unsigned k, long max_exponent);
VectorQSeries lift_scalar(const ScalarQSeries& f, const Rational& weight, const std::string& lattice_ref);

}  // namespace heegcone
