#include "heegcone/cone.hpp"

#include "heegcone/error.hpp"
#include "heegcone/estimates.hpp"
#include "heegcone/lp.hpp"
#include "heegcone/parallel.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace heegcone {

RatVector ConePoint::normalized() const {
  RatVector out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i] / gamma;
  return out;
}

namespace {

Rational sup_norm(const RatVector& x) {
  Rational out = 0;
  for (const auto& v : x)
    if (abs(v) > out) out = abs(v);
  return out;
}

// (x_b - x_a) x (x_c - x_a) in the plane.
Rational cross(const RatVector& a, const RatVector& b, const RatVector& c) {
  return Rational((b[0] - a[0]) * (c[1] - a[1])) - Rational((b[1] - a[1]) * (c[0] - a[0]));
}

// Strict vertices of the planar hull (collinear boundary points dropped).
std::vector<std::size_t> planar_hull(const std::vector<RatVector>& x, std::vector<std::size_t> ids) {
  std::sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
    if (x[a][0] != x[b][0]) return x[a][0] < x[b][0];
    return x[a][1] < x[b][1];
  });
  if (ids.size() <= 2) return ids;
  std::vector<std::size_t> hull(2 * ids.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    while (k >= 2 && cross(x[hull[k - 2]], x[hull[k - 1]], x[ids[i]]) <= 0) --k;
    hull[k++] = ids[i];
  }
  for (std::size_t i = ids.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(x[hull[k - 2]], x[hull[k - 1]], x[ids[i]]) <= 0) --k;
    hull[k++] = ids[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

bool ConeReport::verify() const {
  std::vector<bool> covered(points.size(), false);
  for (auto r : rays) {
    if (r >= points.size() || covered[r]) return false;
    covered[r] = true;
  }
  for (const auto& c : certificates) {
    if (c.point >= points.size()) return false;
    const ConePoint& p = points[c.point];
    Rational g = 0;
    RatVector s(p.s.size(), Rational(0));
    for (const auto& [ray, lambda] : c.lambda) {
      if (lambda < 0 || std::find(rays.begin(), rays.end(), ray) == rays.end()) return false;
      g += lambda * points[ray].gamma;
      for (std::size_t i = 0; i < s.size(); ++i) s[i] += lambda * points[ray].s[i];
    }
    if (g != p.gamma || s != p.s) return false;
    covered[c.point] = true;
  }
  return std::all_of(covered.begin(), covered.end(), [](bool b) { return b; });
}

std::vector<std::string> ConeReport::ray_tags() const {
  std::vector<std::string> out;
  for (auto r : rays) out.push_back(points[r].tag);
  return out;
}

std::vector<HeegnerIndex> indices_up_to(const DiscGroup& group, const Rational& max_m) {
  std::vector<HeegnerIndex> out;
  for (const auto& mu : group.elements()) {
    Rational m = group.q_value(mu);
    if (m == 0) m = 1;
    for (; m <= max_m; m += 1) out.push_back({m, mu});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ConePoint> assemble_points(const EisensteinSeries& eis, const CuspBasis& basis,
                                       const std::vector<HeegnerIndex>& indices, unsigned jobs, bool primitive) {
  std::vector<ConePoint> out(indices.size());
  parallel_for(indices.size(), jobs, [&](std::size_t i) {
    FormalDivisor d(primitive ? DivisorBasis::P : DivisorBasis::H);
    d.add(indices[i], 1);
    const DivisorClass c = divisor_class(eis, d, basis);
    ConePoint& p = out[i];
    p.tag = (primitive ? "P" : "H") + format_index(eis.group(), indices[i]);
    p.index = indices[i];
    p.primitive = primitive;
    p.interval_gamma = !c.gamma_exact;
    p.gamma = c.gamma;
    p.s = c.s;
  });
  return out;
}

ConePoint hodge_point(std::size_t basis_size) {
  const DivisorClass c = hodge_class(basis_size);
  ConePoint p;
  p.tag = "hodge";
  p.hodge = true;
  p.gamma = c.gamma;
  p.s = c.s;
  return p;
}

ConeReport extreme_rays(std::vector<ConePoint> points) {
  HEEGCONE_REQUIRE(!points.empty(), ErrorCode::invalid_argument, "extreme_rays needs at least one point");
  const std::size_t n = points.front().s.size();
  for (const auto& p : points) {
    HEEGCONE_REQUIRE(p.s.size() == n, ErrorCode::invalid_argument, "cone points have mixed dimensions");
    HEEGCONE_REQUIRE(p.gamma > 0, ErrorCode::check_failed, "cone point " + p.tag + " has gamma <= 0");
  }
  ConeReport rep;
  rep.points = std::move(points);
  const auto& pts = rep.points;
  std::vector<RatVector> x;
  for (const auto& p : pts) x.push_back(p.normalized());

  // First occurrence of each normalized value; later copies are certified by it.
  std::map<RatVector, std::size_t> first;
  std::vector<std::size_t> distinct;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (first.emplace(x[i], i).second) distinct.push_back(i);

  if (distinct.size() == 1) {
    rep.method = "single";
    rep.rays = distinct;
  } else if (n == 1) {
    rep.method = "interval";
    auto [lo, hi] = std::minmax_element(distinct.begin(), distinct.end(),
                                        [&](std::size_t a, std::size_t b) { return x[a][0] < x[b][0]; });
    rep.rays = {*lo, *hi};
  } else if (n == 2) {
    rep.method = "planar hull";
    rep.rays = planar_hull(x, distinct);
  } else {
    rep.method = "lp";
    for (auto i : distinct) {
      std::vector<RatVector> others;
      for (auto j : distinct)
        if (j != i) others.push_back(x[j]);
      if (!convex_combination(others, x[i])) rep.rays.push_back(i);
    }
  }
  std::sort(rep.rays.begin(), rep.rays.end());

  std::vector<RatVector> ray_x;
  for (auto r : rep.rays) ray_x.push_back(x[r]);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (std::binary_search(rep.rays.begin(), rep.rays.end(), i)) continue;
    InclusionCertificate cert;
    cert.point = i;
    const auto alpha = convex_combination(ray_x, x[i]);
    HEEGCONE_REQUIRE(alpha.has_value(), ErrorCode::check_failed, "point " + pts[i].tag + " outside the ray hull");
    for (std::size_t j = 0; j < rep.rays.size(); ++j)
      if ((*alpha)[j] != 0)
        cert.lambda.emplace_back(rep.rays[j], Rational((*alpha)[j] * pts[i].gamma / pts[rep.rays[j]].gamma));
    rep.certificates.push_back(std::move(cert));
  }
  HEEGCONE_REQUIRE(rep.verify(), ErrorCode::check_failed, "inclusion certificates failed to verify");
  return rep;
}

InteriorVerdict interior_certificate(const std::vector<ConePoint>& points, const RelationCertificate& cert,
                                     std::size_t basis_size) {
  InteriorVerdict v;
  v.s_sum.assign(basis_size, Rational(0));
  v.gamma_sum = 0;
  std::vector<RatVector> all, sub;
  const Rational cutoff = Rational(cert.B) - cert.t_hat.value;
  for (const auto& term : cert.terms) {
    std::size_t at = points.size();
    for (std::size_t i = 0; i < points.size(); ++i)
      if (!points[i].primitive && points[i].index && *points[i].index == term.index) at = i;
    HEEGCONE_REQUIRE(at < points.size(), ErrorCode::invalid_argument,
                     "relation index m = " + to_string(term.index.m) + " is not among the cone points");
    const ConePoint& p = points[at];
    HEEGCONE_REQUIRE(p.s.size() == basis_size, ErrorCode::invalid_argument, "cone point dimension mismatch");
    v.combination.emplace_back(at, term.lambda);
    v.gamma_sum += term.lambda * p.gamma;
    for (std::size_t j = 0; j < basis_size; ++j) v.s_sum[j] += term.lambda * p.s[j];
    all.push_back(p.s);
    if (term.index.m <= cutoff) sub.push_back(p.s);
  }
  v.zero_sum = std::all_of(v.s_sum.begin(), v.s_sum.end(), [](const Rational& q) { return q == 0; });
  v.positive = v.gamma_sum > 0;
  v.spans = rational_rank(all) == basis_size;
  v.sub_spans = rational_rank(sub) == basis_size;
  v.certified = v.zero_sum && v.positive && v.spans;
  if (!v.zero_sum) v.message = "relation fails: sum lambda s != 0 (basis not modular?)";
  else if (!v.positive) v.message = "sum lambda gamma <= 0";
  else if (!v.spans) v.message = "certificate points do not span the cusp space";
  else v.message = "certified";
  return v;
}

PrimitiveReport primitive_cone(const EisensteinSeries& eis, const CuspBasis& basis, const Rational& max_m,
                               unsigned jobs) {
  const auto indices = indices_up_to(eis.group(), max_m);
  PrimitiveReport out;
  out.cone = extreme_rays(assemble_points(eis, basis, indices, jobs, true));
  out.cone.basis_validated = basis.validated;
  out.diagnostics.resize(indices.size());
  parallel_for(indices.size(), jobs, [&](std::size_t i) {
    out.diagnostics[i] = {indices[i], q_ratio(eis, indices[i]).value};
  });
  return out;
}

TruncationReport truncation_scan(const PointSource& source, const Rational& max_m, const Rational& factor) {
  HEEGCONE_REQUIRE(max_m >= 1 && factor > 1, ErrorCode::invalid_argument, "truncation scan needs M >= 1, factor > 1");
  TruncationReport rep;
  rep.base_bound = max_m;
  rep.window_bound = max_m * factor;
  const ConeReport base = extreme_rays(source(rep.base_bound));
  const ConeReport window = extreme_rays(source(rep.window_bound));
  rep.base_max_norm = 0;
  rep.window_max_norm = 0;
  for (const auto& p : base.points) rep.base_max_norm = std::max(rep.base_max_norm, sup_norm(p.normalized()));
  for (const auto& p : window.points)
    if (p.index && p.index->m > max_m)
      rep.window_max_norm = std::max(rep.window_max_norm, sup_norm(p.normalized()));
  bool first = true;
  for (auto r : base.rays) {
    const Rational v = sup_norm(base.points[r].normalized());
    if (first || v < rep.min_ray_norm) rep.min_ray_norm = v;
    first = false;
  }
  rep.base_rays = base.ray_tags();
  rep.window_rays = window.ray_tags();
  rep.rays_equal = rep.base_rays == rep.window_rays;
  return rep;
}

TruncationReport truncation_scan(const EisensteinSeries& eis, const CuspBasis& basis, const Rational& max_m,
                                 const Rational& factor, unsigned jobs) {
  return truncation_scan(
      [&](const Rational& bound) { return assemble_points(eis, basis, indices_up_to(eis.group(), bound), jobs); },
      max_m, factor);
}

}  // namespace heegcone
