#include "heegcone/lp.hpp"

#include "heegcone/error.hpp"

namespace heegcone {

std::optional<RatVector> find_nonnegative_solution(const std::vector<RatVector>& a, const RatVector& b) {
  const std::size_t m = a.size();
  HEEGCONE_REQUIRE(b.size() == m, ErrorCode::invalid_argument, "lp: row count mismatch");
  const std::size_t n = m == 0 ? 0 : a[0].size();
  if (m == 0) return RatVector(n, Rational(0));
  // tableau [A | I | b], artificial basis
  const std::size_t cols = n + m;
  std::vector<RatVector> t(m, RatVector(cols + 1, Rational(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    HEEGCONE_REQUIRE(a[i].size() == n, ErrorCode::invalid_argument, "lp: ragged matrix");
    const int sign = b[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = sign * a[i][j];
    t[i][n + i] = 1;
    t[i][cols] = sign * b[i];
    basis[i] = n + i;
  }
  // reduced costs of the phase-one objective sum(artificials)
  RatVector cost(cols + 1, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= cols; ++j)
      if (j < n || j == cols) cost[j] -= t[i][j];
  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (enter == cols) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational r = t[i][cols] / t[i][enter];
      if (leave == m || r < best || (r == best && basis[i] < basis[leave])) {
        leave = i;
        best = r;
      }
    }
    HEEGCONE_REQUIRE(leave < m, ErrorCode::check_failed, "lp: phase one unbounded");
    const Rational piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j <= cols; ++j)
        if (t[leave][j] != 0) t[i][j] -= f * t[leave][j];
    }
    if (cost[enter] != 0) {
      const Rational f = cost[enter];
      for (std::size_t j = 0; j <= cols; ++j)
        if (t[leave][j] != 0) cost[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  if (cost[cols] != 0) return std::nullopt;
  RatVector x(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) x[basis[i]] = t[i][cols];
  return x;
}

std::optional<RatVector> convex_combination(const std::vector<RatVector>& points, const RatVector& x) {
  if (points.empty()) return std::nullopt;
  const std::size_t d = x.size();
  std::vector<RatVector> a(d + 1, RatVector(points.size(), Rational(0)));
  RatVector b(d + 1, Rational(0));
  for (std::size_t j = 0; j < points.size(); ++j) {
    HEEGCONE_REQUIRE(points[j].size() == d, ErrorCode::invalid_argument, "points of mixed dimension");
    for (std::size_t i = 0; i < d; ++i) a[i][j] = points[j][i];
    a[d][j] = 1;
  }
  for (std::size_t i = 0; i < d; ++i) b[i] = x[i];
  b[d] = 1;
  return find_nonnegative_solution(a, b);
}

std::size_t rational_rank(std::vector<RatVector> rows) {
  std::size_t rank = 0;
  if (rows.empty()) return 0;
  const std::size_t n = rows[0].size();
  for (std::size_t c = 0; c < n && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const Rational f = rows[i][c] / rows[rank][c];
      for (std::size_t j = c; j < n; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace heegcone
