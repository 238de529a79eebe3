#pragma once

#include "heegcone/eisenstein.hpp"
#include "heegcone/heegner.hpp"
#include "heegcone/relation.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace heegcone {

/// A divisor class gamma e + s in the affine coordinates of the cone.
struct ConePoint {
  std::string tag;
  std::optional<HeegnerIndex> index;
  bool primitive = false;
  bool hodge = false;
  bool interval_gamma = false;
  Rational gamma;
  RatVector s;

  RatVector normalized() const;
};

/// point = sum lambda_j ray_j with lambda_j >= 0 (cone coordinates).
struct InclusionCertificate {
  std::size_t point = 0;
  std::vector<std::pair<std::size_t, Rational>> lambda;
};

struct ConeReport {
  std::vector<ConePoint> points;
  std::vector<std::size_t> rays;
  std::vector<InclusionCertificate> certificates;
  std::string method;
  bool basis_validated = false;

  /// Re-multiplies every certificate; checks that every point is a ray or certified.
  bool verify() const;
  std::vector<std::string> ray_tags() const;
};

/// All (m, mu) with 0 < m <= max_m in canonical order.
std::vector<HeegnerIndex> indices_up_to(const DiscGroup& group, const Rational& max_m);

std::vector<ConePoint> assemble_points(const EisensteinSeries& eis, const CuspBasis& basis,
                                       const std::vector<HeegnerIndex>& indices, unsigned jobs = 1,
                                       bool primitive = false);
ConePoint hodge_point(std::size_t basis_size);

/// Extreme rays of the cone generated by the points, working on s / gamma.
ConeReport extreme_rays(std::vector<ConePoint> points);

struct InteriorVerdict {
  bool certified = false;
  bool zero_sum = false;
  bool positive = false;
  bool spans = false;
  /// Spanning of the sub-collection with m <= B - T_hat (where h is forced positive).
  bool sub_spans = false;
  Rational gamma_sum;
  RatVector s_sum;
  std::vector<std::pair<std::size_t, Rational>> combination;
  std::string message;
};
InteriorVerdict interior_certificate(const std::vector<ConePoint>& points, const RelationCertificate& cert,
                                     std::size_t basis_size);

struct QRatioRow {
  HeegnerIndex index;
  Rational value;
};
struct PrimitiveReport {
  ConeReport cone;
  std::vector<QRatioRow> diagnostics;
};
PrimitiveReport primitive_cone(const EisensteinSeries& eis, const CuspBasis& basis, const Rational& max_m,
                               unsigned jobs = 1);

struct TruncationReport {
  Rational base_bound;
  Rational window_bound;
  Rational base_max_norm;    // max ||s/gamma||_inf over m <= M
  Rational window_max_norm;  // over M < m <= factor M
  Rational min_ray_norm;     // min over rays at M of ||s/gamma||_inf
  std::vector<std::string> base_rays;
  std::vector<std::string> window_rays;
  bool rays_equal = false;
  bool stable() const { return rays_equal; }
};
using PointSource = std::function<std::vector<ConePoint>(const Rational& max_m)>;
TruncationReport truncation_scan(const PointSource& source, const Rational& max_m, const Rational& factor);
TruncationReport truncation_scan(const EisensteinSeries& eis, const CuspBasis& basis, const Rational& max_m,
                                 const Rational& factor, unsigned jobs = 1);

}  // namespace heegcone
