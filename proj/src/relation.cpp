#include "heegcone/relation.hpp"

#include "heegcone/error.hpp"

#include <algorithm>

namespace heegcone {

Rational h_weight(const Rational& k, long B) { return 2 - k + 12 * B; }

long default_B(const EvenLattice& lattice, const Rational& k, long span_target) {
  const CosetNorm t = max_min_norm(lattice);
  for (long B = 1;; ++B)
    if (h_weight(k, B) > 2 && B - t.value >= span_target) return B;
}

HForm build_h(const EvenLattice& lattice, const Rational& k, long B, long max_exponent,
              const EisensteinOptions& options, unsigned jobs) {
  const WeightCheck w = validate_weight(lattice, k);
  HEEGCONE_REQUIRE(w.cone_congruence, ErrorCode::invalid_argument, "2k - b+ + b- is not 4 mod 8");
  HEEGCONE_REQUIRE(B >= 1, ErrorCode::invalid_argument, "B must be positive");
  HEEGCONE_REQUIRE(max_exponent >= 0, ErrorCode::invalid_argument, "negative precision");
  HForm out;
  out.B = B;
  out.k_prime = h_weight(k, B);
  HEEGCONE_REQUIRE(out.k_prime > 2, ErrorCode::invalid_argument, "k' = 2 - k + 12B must exceed 2");
  out.t_hat = max_min_norm(lattice);
  const EisensteinSeries e(lattice.negated(), out.k_prime, options);
  const VectorQSeries ev = e.qexp(Rational(max_exponent + B), jobs);
  out.series = ev.times(delta_power(-B, max_exponent), Rational(max_exponent));
  out.series.set_weight(2 - k);
  return out;
}

PositivityReport check_h_positivity(const HForm& h, const DiscGroup& minus_group) {
  PositivityReport r;
  r.strict_from = h.t_hat.value - h.B;
  const auto& comps = h.series.components();
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto& c = comps[i];
    for (std::size_t j = 0; j < c.coeffs.size(); ++j) {
      const Rational e = c.offset + c.first + static_cast<long>(j);
      ++r.checked;
      const std::string where = minus_group.format(minus_group.element(i)) + " q^" + to_string(e);
      if (c.coeffs[j] < 0) {
        r.nonnegative = false;
        r.failures.push_back("negative coefficient at " + where);
      } else if (c.coeffs[j] == 0 && e >= r.strict_from) {
        r.strict = false;
        r.failures.push_back("zero coefficient at " + where);
      }
    }
  }
  return r;
}

RelationCertificate principal_relation(const EvenLattice& lattice, const HForm& h) {
  const DiscGroup g(lattice);
  const DiscGroup gm(lattice.negated());
  RelationCertificate cert;
  cert.B = h.B;
  cert.k_prime = h.k_prime;
  cert.t_hat = h.t_hat;
  const auto& comps = h.series.components();
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const DiscElement mu = g.from_vector(gm.representative(gm.element(i)));
    const auto& c = comps[i];
    for (std::size_t j = 0; j < c.coeffs.size(); ++j) {
      const Rational e = c.offset + c.first + static_cast<long>(j);
      if (e == 0 && g.is_zero(mu)) cert.constant_term = c.coeffs[j];
      if (e >= 0 || e < -h.B || c.coeffs[j] <= 0) continue;
      cert.terms.push_back({make_index(g, -e, mu), c.coeffs[j]});
    }
  }
  std::sort(cert.terms.begin(), cert.terms.end(),
            [](const RelationTerm& a, const RelationTerm& b) { return a.index < b.index; });
  return cert;
}

RelationCertificate principal_relation(const EvenLattice& lattice, const Rational& k, long B,
                                       const EisensteinOptions& options, unsigned jobs) {
  return principal_relation(lattice, build_h(lattice, k, B, 0, options, jobs));
}

ScalarQSeries scalar_h(unsigned k, long B, long max_exponent) {
  const Rational kp = h_weight(k, B);
  HEEGCONE_REQUIRE(is_integer(kp) && kp > 2, ErrorCode::invalid_argument, "k' must be an integer > 2");
  const unsigned kprime = static_cast<unsigned>(kp.get_num().get_ui());
  return (delta_power(-B, max_exponent) * scalar_eisenstein(kprime, max_exponent + B)).truncated(max_exponent);
}

RelationCertificate scalar_relation(unsigned k, long B) {
  const ScalarQSeries h = scalar_h(k, B, 0);
  RelationCertificate cert;
  cert.B = B;
  cert.k_prime = h_weight(k, B);
  cert.t_hat.value = 1;
  cert.constant_term = h[0];
  for (long m = 1; m <= B; ++m)
    if (h[-m] > 0) cert.terms.push_back({{Rational(m), DiscElement{}}, h[-m]});
  return cert;
}

Rational residue_pair(const RelationCertificate& cert, const VectorQSeries& g) {
  Rational s = 0;
  for (const auto& t : cert.terms) s += t.lambda * g.coefficient(t.index.mu, t.index.m);
  return s;
}

Rational residue_pair(const RelationCertificate& cert, const ScalarQSeries& g) {
  Rational s = 0;
  for (const auto& t : cert.terms) {
    HEEGCONE_REQUIRE(is_integer(t.index.m) && t.index.mu.coords.empty(), ErrorCode::invalid_argument,
                     "scalar pairing needs integral level-one indices");
    s += t.lambda * g[t.index.m.get_num().get_si()];
  }
  return s;
}

std::vector<ScalarQSeries> level_one_cusp_basis(unsigned k, long max_exponent) {
  std::vector<ScalarQSeries> out;
  if (k < 12 || k % 2 != 0) return out;
  const ScalarQSeries delta = delta_power(1, max_exponent);
  const ScalarQSeries e4 = scalar_eisenstein(4, max_exponent);
  const ScalarQSeries e6 = scalar_eisenstein(6, max_exponent);
  const unsigned rest = k - 12;
  for (unsigned b = 0; 6 * b <= rest; ++b) {
    if ((rest - 6 * b) % 4 != 0) continue;
    const unsigned a = (rest - 6 * b) / 4;
    ScalarQSeries f = delta * e4.pow(a) * e6.pow(b);
    out.push_back(f.truncated(max_exponent));
  }
  return out;
}

VectorQSeries lift_scalar(const ScalarQSeries& f, const Rational& weight, const std::string& lattice_ref) {
  HEEGCONE_REQUIRE(f.start() >= 0, ErrorCode::invalid_argument, "lift expects a holomorphic series");
  VectorQSeries::Component c;
  c.offset = 0;
  c.first = f.start();
  c.coeffs = f.coefficients();
  return VectorQSeries(lattice_ref, weight, {}, Rational(f.max_exponent()), {c});
}

}  // namespace heegcone
