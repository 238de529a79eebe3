#include "doctest.h"

#include "heegcone/error.hpp"
#include "heegcone/qseries.hpp"
#include "heegcone/relation.hpp"

using namespace heegcone;

TEST_CASE("series arithmetic") {
  const ScalarQSeries d = delta_power(1, 12);
  CHECK(d[1] == 1);
  CHECK(d[2] == -24);
  CHECK(d[3] == 252);
  CHECK(d[4] == -1472);
  const ScalarQSeries inv = delta_power(-1, 10);
  CHECK(inv[-1] == 1);
  CHECK(inv[0] == 24);
  CHECK(inv[1] == 324);
  CHECK(inv[2] == 3200);
  CHECK(d.inverse()[2] == 3200);
  const ScalarQSeries one = d * inv;
  CHECK(one[0] == 1);
  for (long n = 1; n <= one.max_exponent(); ++n) CHECK(one[n] == 0);
  const ScalarQSeries geom = ScalarQSeries(0, {1, -1, 0, 0, 0, 0}).inverse();
  for (long n = 0; n <= 5; ++n) CHECK(geom[n] == 1);
  const ScalarQSeries d2 = delta_power(-2, 5);
  CHECK(d2[-2] == 1);
  CHECK(d2[-1] == 48);
  const ScalarQSeries sq = inv.pow(2);
  for (long n = -2; n <= d2.max_exponent(); ++n) CHECK(sq[n] == d2[n]);
  CHECK_THROWS_AS(ScalarQSeries(0, {0, 1}).inverse(), Error);
  CHECK_THROWS_AS(d[13], Error);
  const ScalarQSeries p = partition_series(10);
  CHECK(p[10] == 42);
  // partition generating function = q^(1/24)/eta, so Delta^(-1) = q^-1 P^24
  const ScalarQSeries p24 = p.pow(24);
  for (long n = 0; n <= 10; ++n) CHECK(p24[n] == inv[n - 1]);
}

TEST_CASE("Delta powers are positive") {
  for (long B = 1; B <= 4; ++B) {
    const ScalarQSeries s = delta_power(-B, 50);
    CHECK(s.start() == -B);
    for (long n = -B; n <= 50; ++n) CHECK(s[n] > 0);
  }
}

TEST_CASE("scalar Eisenstein series") {
  CHECK(scalar_eisenstein(4, 3)[1] == 240);
  CHECK(scalar_eisenstein(6, 3)[1] == -504);
  CHECK(scalar_eisenstein(14, 3)[1] == -24);
  CHECK(scalar_eisenstein(8, 3)[2] == 480 * 129);
  CHECK_THROWS_AS(scalar_eisenstein(5, 3), Error);
  CHECK_THROWS_AS(scalar_eisenstein(2, 3), Error);
  // E4^2 = E8 and E4 E6 = E10
  const ScalarQSeries e4 = scalar_eisenstein(4, 20);
  const ScalarQSeries e8 = e4 * e4;
  const ScalarQSeries e10 = e4 * scalar_eisenstein(6, 20);
  for (long n = 0; n <= 20; ++n) {
    CHECK(e8[n] == scalar_eisenstein(8, 20)[n]);
    CHECK(e10[n] == scalar_eisenstein(10, 20)[n]);
  }
}

TEST_CASE("coset minimal norms") {
  const EvenLattice l = build_named("rank1(4)+U^2");
  const DiscGroup g(l);
  CHECK(coset_min_norm(l, g, g.zero()).value == 1);
  CHECK(coset_min_norm(l, g, g.element(1)).value == Rational(7, 8));
  CHECK(max_min_norm(l).value == 1);
  CHECK(max_min_norm(l).exact);
  // bounded search on an undeclared copy agrees with the closed form
  for (const char* name : {"rank1(4)+U", "rank1(2)+U", "rank1(6)+U", "rank1(2)+rank1(2)+U"}) {
    const EvenLattice split = build_named(name);
    const EvenLattice bare(split.gram());
    const DiscGroup gs(split);
    const DiscGroup gb(bare);
    for (const auto& mu : gs.elements()) {
      const CosetNorm a = coset_min_norm(split, gs, mu);
      const CosetNorm b = coset_min_norm(bare, gb, gb.from_vector(gs.representative(mu)), 3);
      CHECK(a.exact);
      CHECK_FALSE(b.exact);
      CHECK(a.value == b.value);
    }
  }
}

TEST_CASE("scalar residue identity") {
  const ScalarQSeries h = scalar_h(12, 2, 5);
  CHECK(h[-2] == 1);
  CHECK(h[-1] == 24);
  const RelationCertificate c = scalar_relation(12, 2);
  REQUIRE(c.terms.size() == 2);
  CHECK(c.terms[0].index.m == 1);
  CHECK(c.terms[0].lambda == 24);
  CHECK(c.terms[1].index.m == 2);
  CHECK(c.terms[1].lambda == 1);
  CHECK(residue_pair(c, delta_power(1, 5)) == 0);
  CHECK(residue_pair(RelationCertificate{}, delta_power(1, 5)) == 0);
}

TEST_CASE("level one cusp forms") {
  CHECK(level_one_cusp_basis(12, 5).size() == 1);
  CHECK(level_one_cusp_basis(14, 5).empty());
  CHECK(level_one_cusp_basis(24, 5).size() == 2);
  const auto b18 = level_one_cusp_basis(18, 5);
  REQUIRE(b18.size() == 1);
  CHECK(b18[0][1] == 1);
  CHECK(b18[0][2] == -528);
  CHECK(b18[0][3] == -4284);
}

TEST_CASE("Borcherds form on unimodular lattices") {
  struct Case {
    const char* name;
    unsigned k;
    std::size_t cusp_dim;
  };
  for (const Case& c : {Case{"E8+U^2", 6, 0}, Case{"E8^3+U^2", 14, 0}, Case{"E8^4+U^2", 18, 1}}) {
    CAPTURE(c.name);
    const EvenLattice l = build_named(c.name);
    for (long B = 1; B <= 3; ++B) {
      if (h_weight(c.k, B) <= 2) continue;
      const HForm h = build_h(l, c.k, B, 20);
      CHECK(check_h_positivity(h, DiscGroup(l.negated())).passed());
      const RelationCertificate cert = principal_relation(l, h);
      const auto basis = level_one_cusp_basis(c.k, 10);
      CHECK(basis.size() == c.cusp_dim);
      for (const auto& f : basis) CHECK(residue_pair(cert, lift_scalar(f, c.k, c.name)) == 0);
    }
  }
  const RelationCertificate r36 = principal_relation(build_named("E8^4+U^2"), 18, 2);
  REQUIRE(r36.terms.size() == 2);
  CHECK(r36.terms[0].lambda == 528);
  CHECK(r36.terms[1].lambda == 1);
  const EisensteinSeries e36(build_named("E8^4+U^2"), 18);
  Rational total = 0;
  for (const auto& t : r36.terms) total -= t.lambda * e36.coefficient(t.index.m, t.index.mu).value;
  CHECK(total == r36.constant_term);
}

TEST_CASE("Borcherds form on <2>+U^2") {
  const EvenLattice l = build_named("rank1(2)+U^2");
  for (long B = 1; B <= 3; ++B) {
    const HForm h = build_h(l, Rational(5, 2), B, 20);
    CHECK(h.series.max_exponent() == 20);
    CHECK(check_h_positivity(h, DiscGroup(l.negated())).passed());
    const RelationCertificate cert = principal_relation(l, h);
    CHECK_FALSE(cert.terms.empty());
    const EisensteinSeries e(l, Rational(5, 2));
    Rational total = 0;
    for (const auto& t : cert.terms) total -= t.lambda * e.coefficient(t.index.m, t.index.mu).value;
    CHECK(total == cert.constant_term);
  }
  CHECK_THROWS_AS(build_h(l, Rational(5, 2), 0, 5), Error);
  CHECK_THROWS_AS(build_h(l, Rational(9, 2), 1, 5), Error);
}
