// Acceptance criteria: one PASS/FAIL line each, exit status 0 iff all pass.
#include "heegcone/arith.hpp"
#include "heegcone/cone.hpp"
#include "heegcone/eisenstein.hpp"
#include "heegcone/error.hpp"
#include "heegcone/estimates.hpp"
#include "heegcone/heegner.hpp"
#include "heegcone/relation.hpp"
#include "heegcone/repnum.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace heegcone;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Tally {
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::string first_failure;

  void check(bool ok, const std::string& what) {
    ++checked;
    if (!ok && failed++ == 0) first_failure = what;
  }
  Outcome outcome(const std::string& extra = {}) const {
    std::string d = std::to_string(checked) + " checks, " + std::to_string(failed) + " failures";
    if (failed) d += "; first: " + first_failure;
    if (!extra.empty()) d += "; " + extra;
    return {failed == 0 && checked > 0, d};
  }
};

Integer u(std::uint64_t x) { return Integer(static_cast<unsigned long>(x)); }

EisensteinOptions no_shortcut() {
  EisensteinOptions o;
  o.level_one_shortcut = false;
  return o;
}

// Closed forms for U and U+U against full enumeration of (Z/p^nu)^n.
Outcome rep_oracle() {
  Tally t;
  const EvenLattice l1 = build_named("U"), l2 = build_named("U^2");
  for (std::uint64_t p : {2, 3, 5})
    for (int nu = 1; nu <= 3; ++nu) {
      const std::uint64_t q = ipow_u64(p, nu);
      const auto h1 = histogram_bruteforce(l1.gram(), IntVector(2, 0), q);
      const auto h2 = histogram_bruteforce(l2.gram(), IntVector(4, 0), q, std::uint64_t{1} << 28);
      for (std::uint64_t m = 0; m < q; ++m) {
        const std::string at = "p=" + std::to_string(p) + " nu=" + std::to_string(nu) + " m=" + std::to_string(m);
        t.check(rep_count_U(u(m), p, nu) == u(h1[m]), "U " + at);
        t.check(rep_count_UU(u(m), p, nu) == u(h2[m]), "U+U " + at);
      }
    }
  return t.outcome();
}

// Q(x + mu) - Q(mu) = Q(x) + (G mu).x with G mu integral, so one histogram per coset.
Outcome convolution_paths() {
  Tally t;
  const std::uint64_t cap = default_enumeration_cap;
  for (const char* name : {"rank1(2)+U", "rank1(4)+U", "E8"}) {
    const EvenLattice l = build_named(name);
    RepCounter counter(l);
    const DiscGroup& g = counter.group();
    for (const auto& mu : g.elements()) {
      const RatVector rep = g.representative(mu);
      IntVector shift(l.rank());
      for (std::size_t i = 0; i < l.rank(); ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < l.rank(); ++j) s += Rational(l.gram()[i][j]) * rep[j];
        shift[i] = s.get_num();
      }
      const Rational q_mu = l.norm(rep);
      for (std::uint64_t p : {2, 3, 5})
        for (int nu = 1;; ++nu) {
          const std::uint64_t q = ipow_u64(p, nu);
          if (ipow_u64(p, nu * static_cast<int>(l.rank())) > cap) break;
          const auto hist = histogram_bruteforce(l.gram(), shift, q, cap);
          for (std::uint64_t j = 0; j < q; ++j) {
            const Rational m = g.q_value(mu) + u(j);
            const Integer slot = mod(Rational(m - q_mu).get_num(), u(q));
            t.check(counter.count_prime_power(m, mu, p, nu) == u(hist[slot.get_ui()]),
                    std::string(name) + " mu=" + g.format(mu) + " p=" + std::to_string(p) + " nu=" +
                        std::to_string(nu) + " m=" + to_string(m));
          }
        }
    }
  }
  return t.outcome();
}

Outcome epsilon_duality() {
  Tally t;
  std::size_t skipped = 0;
  struct Case {
    const char* name;
    Rational k;
  };
  for (const Case& c : {Case{"U^2", 2}, Case{"rank1(2)+U^2", ratio(5, 2)}, Case{"rank1(4)+U^2", ratio(5, 2)}}) {
    const EisensteinSeries e(build_named(c.name), c.k, no_shortcut());
    for (const auto& mu : e.group().elements())
      for (Rational m = e.group().q_value(mu); m <= 20; m += 1) {
        if (m == 0) continue;
        try {
          t.check(e.epsilon(m, mu, EpsilonFormula::euler_product) == e.epsilon(m, mu, EpsilonFormula::divisor_sum),
                  std::string(c.name) + " m=" + to_string(m) + " mu=" + e.group().format(mu));
        } catch (const Error& err) {
          if (err.code() != ErrorCode::budget_exceeded) throw;
          ++skipped;
        }
      }
  }
  return t.outcome(std::to_string(skipped) + " infeasible");
}

Outcome classical() {
  Tally t;
  const EisensteinSeries uu(build_named("U^2"), 2, no_shortcut());
  for (long m = 1; m <= 50; ++m)
    t.check(uu.coefficient(m, uu.group().zero()).value == -24 * Rational(sigma(1, m)), "U+U m=" + std::to_string(m));
  const EisensteinSeries e8(build_named("E8+U^2"), 6, no_shortcut());
  const ScalarQSeries e6 = scalar_eisenstein(6, 10);
  for (long m = 1; m <= 10; ++m) {
    const Rational v = e8.coefficient(m, e8.group().zero()).value;
    t.check(v == e6[m] && v == -504 * Rational(sigma(5, m)), "E8+U^2 m=" + std::to_string(m));
  }
  return t.outcome();
}

Outcome sign_law() {
  Tally t;
  struct Case {
    const char* name;
    Rational k;
    long max_m;
  };
  for (const Case& c : {Case{"U^2", 2, 30}, Case{"rank1(2)+U^2", ratio(5, 2), 30}, Case{"rank1(4)+U^2", ratio(5, 2), 20},
                        Case{"rank1(6)+U^2", ratio(5, 2), 15}, Case{"rank1(2)+rank1(2)+U^2", 3, 15},
                        Case{"E8+U^2", 6, 20}, Case{"E8^4+U^2", 18, 20}, Case{"K3(1)", ratio(21, 2), 8}}) {
    const EisensteinSeries e(build_named(c.name), c.k, no_shortcut());
    for (const auto& mu : e.group().elements())
      for (Rational m = e.group().q_value(mu); m <= c.max_m; m += 1) {
        if (m == 0) continue;
        const std::string at = std::string(c.name) + " m=" + to_string(m) + " mu=" + e.group().format(mu);
        const Coefficient x = e.coefficient(m, mu);
        t.check(x.sign() != 2 && e.sign_law() * x.sign() >= 0, at);
      }
  }
  // K3(1): exact and interval agree; includes w_2 = 3 indices (mu = 0, odd m).
  EisensteinOptions iv = no_shortcut();
  iv.mode = CoefficientMode::interval;
  const EisensteinSeries exact(build_named("K3(1)"), ratio(21, 2), no_shortcut());
  const EisensteinSeries interval(build_named("K3(1)"), ratio(21, 2), iv);
  for (const auto& mu : exact.group().elements())
    for (Rational m = exact.group().q_value(mu); m <= 6; m += 1) {
      if (m == 0) continue;
      const Coefficient a = exact.coefficient(m, mu);
      const Coefficient b = interval.coefficient(m, mu);
      const std::string at = "K3(1) exact/interval m=" + to_string(m);
      t.check(a.exact && !b.exact && b.enclosure.contains(a.value), at);
      t.check(b.sign() == a.sign() && interval.sign_law() * b.sign() >= 0, at + " sign");
    }
  return t.outcome();
}

Outcome moebius_round_trip() {
  Tally t;
  std::uint64_t state = 20240601;
  auto next = [&](std::uint64_t bound) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return (state >> 33) % bound;
  };
  const char* groups[] = {"rank1(2)", "rank1(12)", "rank1(4)+rank1(4)", "rank1(2)+rank1(6)", "rank1(36)"};
  for (int i = 0; i < 200; ++i) {
    const DiscGroup g(build_named(groups[i % 5]));
    const DiscElement mu = g.element(next(g.size()));
    Rational m = g.q_value(mu) + u(next(60));
    if (m == 0) m = 1;
    const HeegnerIndex idx = make_index(g, m, mu);
    const std::string at = std::string(groups[i % 5]) + " " + format_index(g, idx);
    FormalDivisor p(DivisorBasis::P), h(DivisorBasis::H);
    p.add(idx, 1);
    h.add(idx, 1);
    t.check(to_P_basis(g, expand_P_in_H(g, idx)) == p, "P " + at);
    t.check(to_H_basis(g, expand_H_in_P(g, idx)) == h, "H " + at);
  }
  return t.outcome();
}

Outcome residue_identity() {
  Tally t;
  const ScalarQSeries h = scalar_h(12, 2, 3);
  t.check(h[-1] == 24, "c_-1(Delta^-2 E14) = " + to_string(h[-1]));
  t.check(h[-2] == 1, "c_-2(Delta^-2 E14)");
  t.check(residue_pair(scalar_relation(12, 2), delta_power(1, 4)) == 0, "pairing with Delta");
  const EvenLattice l36 = build_named("E8^4+U^2");
  const RelationCertificate cert = principal_relation(l36, 18, 2);
  const auto basis = level_one_cusp_basis(18, 4);
  t.check(basis.size() == 1, "rank 36 cusp space has dimension 1");
  for (const auto& f : basis) t.check(residue_pair(cert, lift_scalar(f, 18, "E8^4+U^2")) == 0, "rank 36 pairing");
  return t.outcome();
}

Outcome borcherds_positivity() {
  Tally t;
  struct Case {
    const char* name;
    Rational k;
  };
  for (const Case& c : {Case{"E8+U^2", 6}, Case{"E8^2+U^2", 10}, Case{"E8^3+U^2", 14}, Case{"E8^4+U^2", 18},
                        Case{"rank1(2)+U^2", ratio(5, 2)}}) {
    const EvenLattice l = build_named(c.name);
    const DiscGroup minus(l.negated());
    for (long B = 1; B <= 3; ++B) {
      if (h_weight(c.k, B) <= 2) continue;
      const HForm h = build_h(l, c.k, B, 20);
      const PositivityReport r = check_h_positivity(h, minus);
      t.check(r.passed() && r.checked > 0,
              std::string(c.name) + " B=" + std::to_string(B) + (r.failures.empty() ? "" : ": " + r.failures[0]));
    }
  }
  return t.outcome();
}

Outcome cone_pipeline() {
  Tally t;
  const EisensteinSeries e36(build_named("E8^4+U^2"), 18);
  CuspBasis basis;
  basis.forms.push_back(lift_scalar(level_one_cusp_basis(18, 60).at(0), 18, "E8^4+U^2"));
  const RelationCertificate cert = principal_relation(build_named("E8^4+U^2"), 18, 2);
  basis.validated = residue_pair(cert, basis.forms[0]) == 0;
  t.check(basis.validated, "basis validation");
  const ConeReport rep = extreme_rays(assemble_points(e36, basis, indices_up_to(e36.group(), 30)));
  t.check(rep.points.size() == 30, "30 points");
  t.check(rep.rays.size() == 2 && rep.points[rep.rays[0]].index->m == 1 && rep.points[rep.rays[1]].index->m == 2,
          "rays are m=1, m=2");
  t.check(rep.verify() && rep.certificates.size() == 28, "certificates verify");
  t.check(interior_certificate(rep.points, cert, 1).certified, "interior certificate");
  const TruncationReport tr = truncation_scan(e36, basis, 30, 2);
  t.check(tr.stable() && tr.window_max_norm < tr.min_ray_norm, "stable under doubling to 60");

  const EisensteinSeries e8(build_named("E8+U^2"), 6);
  const ConeReport flat = extreme_rays(assemble_points(e8, {}, indices_up_to(e8.group(), 10)));
  t.check(flat.rays.size() == 1 && flat.verify(), "dim-0 E8+U^2 single ray");
  const EisensteinSeries uu(build_named("U^2"), 2);
  const ConeReport flat2 = extreme_rays(assemble_points(uu, {}, indices_up_to(uu.group(), 10)));
  t.check(flat2.rays.size() == 1 && flat2.verify(), "dim-0 U+U single ray");
  return t.outcome();
}

Outcome constants() {
  Tally t;
  const Rational width = ratio(1, 1000000);
  const Rational step = ratio(1, 1000000);
  struct Case {
    EulerConstant kind;
    const char* name;
    Rational digits;
  };
  std::string shown;
  for (const Case& c : {Case{EulerConstant::landau, "landau", ratio(1943596, 1000000)},
                        Case{EulerConstant::artin, "artin", ratio(373955, 1000000)},
                        Case{EulerConstant::cone_bound, "cone_bound", ratio(215179, 1000000)}}) {
    const Interval x = euler_product_constant(c.kind, width);
    t.check(x.width() <= width, std::string(c.name) + " width");
    t.check(c.digits <= x.lower() && x.upper() <= c.digits + step, std::string(c.name) + " digits");
    if (c.kind == EulerConstant::cone_bound) t.check(x.positive(), "cone_bound > 0");
    std::ostringstream s;
    s << std::setprecision(9) << c.name << "=" << x.midpoint().get_d();
    shown += (shown.empty() ? "" : " ") + s.str();
  }
  return t.outcome(shown);
}

Outcome estimate_suite() {
  Tally t;
  for (const auto& r : run_suite(SuiteConfig{})) t.check(r.passed(), r.summary());
  return t.outcome();
}

Outcome k3_bookkeeping() {
  Tally t;
  for (long d = 1; d <= 5; ++d)
    for (long h = 0; h <= 12; ++h)
      for (long a = 0; a < 2 * d; ++a) {
        HeegnerIndex idx;
        try {
          idx = k3_index_convert(d, h, a);
        } catch (const Error& e) {
          t.check(e.code() == ErrorCode::non_positive_index, "unexpected error");
          continue;
        }
        const NLIndex back = k3_index_inverse(d, idx);
        // (h, a) and (h, -a mod 2d) name the same index
        t.check(back.h == h && (back.a == a || back.a == (2 * d - a) % (2 * d)),
                "d=" + std::to_string(d) + " h=" + std::to_string(h) + " a=" + std::to_string(a));
      }
  EisensteinOptions o = no_shortcut();
  o.mode = CoefficientMode::interval;
  o.rep.closed_forms = false;
  const EisensteinSeries k3(build_named("K3(1)"), ratio(21, 2), o);
  const DiscElement zero = k3.group().zero();
  const EisensteinSeries reference(build_named("K3(1)"), ratio(21, 2), no_shortcut());
  std::size_t done = 0;
  for (long m : {1, 3, 5, 7}) {
    t.check(w_exponent(m, 1, 2) == 3, "w_2 = 3 at m=" + std::to_string(m));
    const Coefficient c = k3.coefficient(m, zero);
    const bool ok = !c.exact && c.sign() != 2 && k3.sign_law() * c.sign() > 0 &&
                    c.enclosure.contains(reference.coefficient(m, zero).value);
    t.check(ok, "K3(1) interval coefficient m=" + std::to_string(m));
    done += ok;
  }
  t.check(done >= 3, "at least 3 K3(1) indices");
  return t.outcome(std::to_string(done) + " K3(1) coefficients");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"representation oracle equivalence", 60, rep_oracle},
      {"convolution path equivalence", 300, convolution_paths},
      {"epsilon formula duality", 600, epsilon_duality},
      {"classical cross-checks", 600, classical},
      {"sign law", 600, sign_law},
      {"Moebius inversion round trip", 600, moebius_round_trip},
      {"residue identity", 60, residue_identity},
      {"Borcherds positivity", 600, borcherds_positivity},
      {"cone pipeline", 600, cone_pipeline},
      {"Euler product constants", 600, constants},
      {"estimate suite", 600, estimate_suite},
      {"K3 bookkeeping", 600, k3_bookkeeping},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_seconds) {
      o.pass = false;
      o.detail += "; over the time limit";
    }
    std::ostringstream line;
    line << (o.pass ? "PASS" : "FAIL") << " [" << std::setw(2) << i + 1 << "] " << c.name << ": " << o.detail << " ("
         << std::fixed << std::setprecision(2) << secs << " s, limit " << c.limit_seconds << " s)";
    std::cout << line.str() << std::endl;
    failed += !o.pass;
  }
  std::cout << (failed == 0 ? "ALL PASS" : std::to_string(failed) + " FAILED") << std::endl;
  return failed == 0 ? 0 : 1;
}
