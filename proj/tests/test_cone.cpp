#include "doctest.h"

#include "heegcone/arith.hpp"
#include "heegcone/cone.hpp"
#include "heegcone/error.hpp"
#include "heegcone/lp.hpp"

#include <algorithm>

using namespace heegcone;

namespace {

ConePoint synthetic(const std::string& tag, const Rational& gamma, RatVector s) {
  ConePoint p;
  p.tag = tag;
  p.gamma = gamma;
  p.s = std::move(s);
  return p;
}

// x on the closed segment [a, b]
bool on_segment(const RatVector& a, const RatVector& b, const RatVector& x) {
  const std::size_t n = x.size();
  std::optional<Rational> t;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational d = b[i] - a[i];
    if (d == 0) {
      if (x[i] != a[i]) return false;
      continue;
    }
    const Rational ti = (x[i] - a[i]) / d;
    if (t && *t != ti) return false;
    t = ti;
  }
  return !t || (*t >= 0 && *t <= 1);
}

Rational orient(const RatVector& a, const RatVector& b, const RatVector& c) {
  return Rational((b[0] - a[0]) * (c[1] - a[1])) - Rational((b[1] - a[1]) * (c[0] - a[0]));
}

// x in the closed triangle abc (plane)
bool in_triangle(const RatVector& a, const RatVector& b, const RatVector& c, const RatVector& x) {
  const Rational o = orient(a, b, c);
  if (o == 0) return on_segment(a, b, x) || on_segment(b, c, x) || on_segment(a, c, x);
  const Rational d1 = orient(a, b, x) * o, d2 = orient(b, c, x) * o, d3 = orient(c, a, x) * o;
  return d1 >= 0 && d2 >= 0 && d3 >= 0;
}

// Caratheodory: a point of a plane set is not extreme iff it lies in a triangle (or segment) of other points.
std::vector<std::size_t> brute_force_extreme(const std::vector<RatVector>& x) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    bool inside = false;
    for (std::size_t a = 0; a < x.size() && !inside; ++a)
      for (std::size_t b = a + 1; b < x.size() && !inside; ++b) {
        if (a == i || b == i) continue;
        inside = on_segment(x[a], x[b], x[i]);
        if (x.front().size() == 2)
          for (std::size_t c = b + 1; c < x.size() && !inside; ++c)
            if (c != i) inside = in_triangle(x[a], x[b], x[c], x[i]);
      }
    if (!inside) out.push_back(i);
  }
  return out;
}

// Ray r is a nonnegative combination of the other rays (cone coordinates)?
bool redundant(const ConeReport& rep, std::size_t r) {
  std::vector<RatVector> cols;
  for (auto j : rep.rays) {
    if (j == r) continue;
    RatVector v{rep.points[j].gamma};
    v.insert(v.end(), rep.points[j].s.begin(), rep.points[j].s.end());
    cols.push_back(v);
  }
  RatVector target{rep.points[r].gamma};
  target.insert(target.end(), rep.points[r].s.begin(), rep.points[r].s.end());
  if (cols.empty()) return false;
  std::vector<RatVector> a(target.size(), RatVector(cols.size()));
  for (std::size_t i = 0; i < target.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) a[i][j] = cols[j][i];
  return find_nonnegative_solution(a, target).has_value();
}

CuspBasis rank36_basis(long prec) {
  CuspBasis b;
  b.forms.push_back(lift_scalar(level_one_cusp_basis(18, prec).at(0), 18, "E8^4+U^2"));
  b.validated = true;
  return b;
}

}  // namespace

TEST_CASE("assemble points") {
  const EisensteinSeries e8(build_named("E8+U^2"), 6);
  const auto pts = assemble_points(e8, {}, indices_up_to(e8.group(), 5));
  REQUIRE(pts.size() == 5);
  for (long m = 1; m <= 5; ++m) {
    CHECK(pts[m - 1].gamma == 504 * sigma(5, m));
    CHECK(pts[m - 1].s.empty());
  }
  const EisensteinSeries e36(build_named("E8^4+U^2"), 18);
  const auto p36 = assemble_points(e36, rank36_basis(10), indices_up_to(e36.group(), 3), 2);
  CHECK(p36[0].s == RatVector{1});
  CHECK(p36[1].s == RatVector{-528});
  CHECK(p36[2].s == RatVector{-4284});
  const ConePoint h = hodge_point(2);
  CHECK(h.gamma == 1);
  CHECK(h.s == RatVector{0, 0});
  CHECK(h.tag == "hodge");
}

TEST_CASE("extreme rays on synthetic data") {
  const ConeReport flat = extreme_rays({synthetic("a", 3, {}), synthetic("b", 5, {})});
  CHECK(flat.rays == std::vector<std::size_t>{0});
  CHECK(flat.verify());
  REQUIRE(flat.certificates.size() == 1);
  CHECK(flat.certificates[0].lambda[0].second == Rational(5, 3));

  std::vector<ConePoint> square;
  for (int a : {-1, 1})
    for (int b : {-1, 1}) square.push_back(synthetic("c", 1, {a, b}));
  square.push_back(synthetic("mid", 2, {1, 0}));
  square.push_back(synthetic("edge", 1, {1, 0}));
  const ConeReport sq = extreme_rays(square);
  CHECK(sq.rays == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(sq.verify());
  CHECK(sq.certificates.size() == 2);

  std::vector<ConePoint> cube;
  for (int a : {-1, 1})
    for (int b : {-1, 1})
      for (int c : {-1, 1}) cube.push_back(synthetic("v", 1, {a, b, c}));
  cube.push_back(synthetic("centre", 7, {0, 0, 0}));
  cube.push_back(synthetic("face", 1, {1, Rational(1, 3), 0}));
  const ConeReport cu = extreme_rays(cube);
  CHECK(cu.method == "lp");
  CHECK(cu.rays.size() == 8);
  CHECK(cu.verify());
  for (auto r : cu.rays) CHECK_FALSE(redundant(cu, r));

  CHECK_THROWS_AS(extreme_rays({}), Error);
  CHECK_THROWS_AS(extreme_rays({synthetic("bad", 0, {1})}), Error);
}

TEST_CASE("extreme rays agree with brute force") {
  std::uint64_t state = 12345;
  auto next = [&]() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<long>((state >> 33) % 9) - 4;
  };
  for (std::size_t dim : {1, 2}) {
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<ConePoint> pts;
      std::vector<RatVector> x;
      const std::size_t count = 3 + static_cast<std::size_t>(trial % 10);
      for (std::size_t i = 0; i < count; ++i) {
        RatVector s;
        for (std::size_t d = 0; d < dim; ++d) s.push_back(Rational(next()));
        const Rational g = 1 + std::abs(next());
        RatVector xi;
        for (const auto& v : s) xi.push_back(v / g);
        if (std::find(x.begin(), x.end(), xi) != x.end()) continue;
        x.push_back(xi);
        pts.push_back(synthetic("p", g, s));
      }
      const ConeReport rep = extreme_rays(pts);
      CHECK(rep.verify());
      CHECK(rep.rays == brute_force_extreme(x));
      for (auto r : rep.rays) CHECK_FALSE(redundant(rep, r));
    }
  }
}

TEST_CASE("rank 36 cone") {
  const EisensteinSeries e36(build_named("E8^4+U^2"), 18);
  const CuspBasis basis = rank36_basis(60);
  const ConeReport rep = extreme_rays(assemble_points(e36, basis, indices_up_to(e36.group(), 30)));
  CHECK(rep.rays == std::vector<std::size_t>{0, 1});
  CHECK(rep.verify());
  CHECK(rep.certificates.size() == 28);
  const double x1 = rep.points[0].normalized()[0].get_d();
  const double x2 = rep.points[1].normalized()[0].get_d();
  CHECK(x1 == doctest::Approx(1.527).epsilon(1e-3));
  CHECK(x2 == doctest::Approx(-0.00615).epsilon(1e-3));

  const RelationCertificate cert = principal_relation(build_named("E8^4+U^2"), 18, 2);
  const InteriorVerdict v = interior_certificate(rep.points, cert, 1);
  CHECK(v.certified);
  CHECK(v.zero_sum);
  CHECK(v.spans);
  CHECK(v.sub_spans);
  CHECK(v.gamma_sum == cert.constant_term);

  const TruncationReport t = truncation_scan(e36, basis, 30, 2);
  CHECK(t.stable());
  CHECK(t.base_rays == std::vector<std::string>{rep.points[0].tag, rep.points[1].tag});
  CHECK(t.window_max_norm < t.min_ray_norm);
  CHECK(t.window_max_norm < t.base_max_norm);
}

TEST_CASE("interior certificate") {
  const EisensteinSeries e8(build_named("E8+U^2"), 6);
  const auto pts = assemble_points(e8, {}, indices_up_to(e8.group(), 3));
  const InteriorVerdict trivial = interior_certificate(pts, principal_relation(build_named("E8+U^2"), 6, 1), 0);
  CHECK(trivial.certified);

  RelationCertificate cert;
  cert.B = 2;
  const DiscGroup g(build_named("E8+U^2"));
  std::vector<ConePoint> family;
  for (long m = 1; m <= 2; ++m) {
    cert.terms.push_back({{m, g.zero()}, 1});
    ConePoint p = synthetic("s", 1, {m, 1});
    p.index = HeegnerIndex{m, g.zero()};
    family.push_back(p);
  }
  const InteriorVerdict bad = interior_certificate(family, cert, 2);
  CHECK_FALSE(bad.certified);
  CHECK_FALSE(bad.zero_sum);
  cert.terms.push_back({{5, g.zero()}, 1});
  CHECK_THROWS_AS(interior_certificate(family, cert, 2), Error);
}

TEST_CASE("primitive cone") {
  const EisensteinSeries e36(build_named("E8^4+U^2"), 18);
  const CuspBasis basis = rank36_basis(10);
  const PrimitiveReport prim = primitive_cone(e36, basis, 9);
  CHECK(prim.cone.verify());
  CHECK(prim.cone.basis_validated);
  const auto h = assemble_points(e36, basis, indices_up_to(e36.group(), 9));
  // P_4 = H_4 - H_1, P_9 = H_9 - H_1; squarefree m gives P = H
  CHECK(prim.cone.points[3].gamma == h[3].gamma - h[0].gamma);
  CHECK(prim.cone.points[3].s[0] == h[3].s[0] - h[0].s[0]);
  CHECK(prim.cone.points[8].gamma == h[8].gamma - h[0].gamma);
  for (std::size_t i : {0, 1, 2, 4, 5, 6}) CHECK(prim.cone.points[i].s == h[i].s);
  REQUIRE(prim.diagnostics.size() == 9);
  CHECK(prim.diagnostics[1].value == 1);

  const EisensteinSeries z4(build_named("rank1(4)+U^2"), Rational(5, 2));
  const PrimitiveReport desk = primitive_cone(z4, {}, 6);
  CHECK(desk.cone.rays.size() == 1);
  CHECK(desk.cone.verify());
  for (const auto& p : desk.cone.points) CHECK(p.gamma > 0);
  for (const auto& d : desk.diagnostics) CHECK(d.value > 0);
}

TEST_CASE("truncation scan") {
  const EisensteinSeries e8(build_named("E8+U^2"), 6);
  const TruncationReport flat = truncation_scan(e8, {}, 5, 2);
  CHECK(flat.stable());
  CHECK(flat.window_max_norm == 0);

  const PointSource diverging = [](const Rational& bound) {
    std::vector<ConePoint> out;
    for (long m = 1; m <= bound; ++m) {
      ConePoint p = synthetic("m=" + std::to_string(m), 1, {m});
      p.index = HeegnerIndex{m, {}};
      out.push_back(p);
    }
    return out;
  };
  const TruncationReport t = truncation_scan(diverging, 4, 2);
  CHECK_FALSE(t.stable());
  CHECK(t.window_max_norm > t.base_max_norm);
}
