#include "heegcone/qseries.hpp"

#include "heegcone/arith.hpp"
#include "heegcone/error.hpp"

#include <algorithm>

namespace heegcone {

ScalarQSeries::ScalarQSeries(long start, std::vector<Rational> coeffs) : start_(start), coeffs_(std::move(coeffs)) {}

Rational ScalarQSeries::operator[](long n) const {
  if (n < start_) return 0;
  HEEGCONE_REQUIRE(n <= max_exponent(), ErrorCode::coverage,
                   "exponent " + std::to_string(n) + " beyond truncation " + std::to_string(max_exponent()));
  return coeffs_[static_cast<std::size_t>(n - start_)];
}

ScalarQSeries ScalarQSeries::truncated(long max_exp) const {
  std::vector<Rational> c = coeffs_;
  long keep = std::max<long>(0, max_exp - start_ + 1);
  if (keep < static_cast<long>(c.size())) c.resize(static_cast<std::size_t>(keep));
  return ScalarQSeries(start_, std::move(c));
}

long ScalarQSeries::valuation() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return start_ + static_cast<long>(i);
  return start_;
}

ScalarQSeries& ScalarQSeries::operator*=(const Rational& c) {
  for (auto& x : coeffs_) x *= c;
  return *this;
}

namespace {

ScalarQSeries combine(const ScalarQSeries& a, const ScalarQSeries& b, int sign) {
  long start = std::min(a.start(), b.start());
  long top = std::min(a.max_exponent(), b.max_exponent());
  std::vector<Rational> c;
  for (long n = start; n <= top; ++n) c.push_back(sign > 0 ? Rational(a[n] + b[n]) : Rational(a[n] - b[n]));
  return ScalarQSeries(start, std::move(c));
}

}  // namespace

ScalarQSeries operator+(const ScalarQSeries& a, const ScalarQSeries& b) { return combine(a, b, 1); }
ScalarQSeries operator-(const ScalarQSeries& a, const ScalarQSeries& b) { return combine(a, b, -1); }

ScalarQSeries operator*(const ScalarQSeries& a, const ScalarQSeries& b) {
  long start = a.start() + b.start();
  long top = std::min(a.max_exponent() + b.start(), b.max_exponent() + a.start());
  std::vector<Rational> c(static_cast<std::size_t>(std::max<long>(0, top - start + 1)));
  const auto& ac = a.coefficients();
  const auto& bc = b.coefficients();
  for (std::size_t i = 0; i < ac.size(); ++i) {
    if (ac[i] == 0) continue;
    for (std::size_t j = 0; j < bc.size() && static_cast<long>(i + j) < static_cast<long>(c.size()); ++j)
      c[i + j] += ac[i] * bc[j];
  }
  return ScalarQSeries(start, std::move(c));
}

ScalarQSeries ScalarQSeries::inverse() const {
  HEEGCONE_REQUIRE(!coeffs_.empty() && coeffs_[0] != 0, ErrorCode::invalid_argument,
                   "series inversion needs a nonzero leading coefficient");
  std::size_t n = coeffs_.size();
  std::vector<Rational> inv(n);
  Rational lead_inv = 1 / coeffs_[0];
  inv[0] = lead_inv;
  for (std::size_t i = 1; i < n; ++i) {
    Rational s = 0;
    for (std::size_t j = 1; j <= i; ++j) s += coeffs_[j] * inv[i - j];
    inv[i] = -s * lead_inv;
  }
  return ScalarQSeries(-start_, std::move(inv));
}

ScalarQSeries ScalarQSeries::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  ScalarQSeries result(0, std::vector<Rational>(coeffs_.size(), Rational(0)));
  std::vector<Rational> one(coeffs_.size(), Rational(0));
  if (!one.empty()) one[0] = 1;
  result = ScalarQSeries(0, one);
  ScalarQSeries base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

std::string ScalarQSeries::str(long terms) const {
  std::string s;
  long shown = 0;
  for (std::size_t i = 0; i < coeffs_.size() && shown < terms; ++i) {
    if (coeffs_[i] == 0) continue;
    long n = start_ + static_cast<long>(i);
    if (!s.empty()) s += " + ";
    s += "(" + to_string(coeffs_[i]) + ")";
    if (n != 0) s += "q^" + std::to_string(n);
    ++shown;
  }
  if (s.empty()) s = "0";
  return s + " + O(q^" + std::to_string(max_exponent() + 1) + ")";
}

ScalarQSeries delta_power(long c, long max_exponent) {
  HEEGCONE_REQUIRE(max_exponent >= c, ErrorCode::invalid_argument, "precision below the leading exponent");
  // prod (1 - q^n)^(24c) = sum a_n q^n with n a_n = -24c sum_{j=1..n} sigma_1(j) a_{n-j}
  std::size_t len = static_cast<std::size_t>(max_exponent - c + 1);
  std::vector<Integer> sig(len + 1, Integer(0));
  for (std::size_t d = 1; d <= len; ++d)
    for (std::size_t j = d; j <= len; j += d) sig[j] += static_cast<unsigned long>(d);
  std::vector<Rational> a(len);
  a[0] = 1;
  for (std::size_t n = 1; n < len; ++n) {
    Rational s = 0;
    for (std::size_t j = 1; j <= n; ++j) s += Rational(sig[j]) * a[n - j];
    a[n] = Rational(-24 * c) * s / Rational(static_cast<unsigned long>(n));
  }
  return ScalarQSeries(c, std::move(a));
}

ScalarQSeries scalar_eisenstein(unsigned k, long max_exponent) {
  HEEGCONE_REQUIRE(k >= 4 && k % 2 == 0, ErrorCode::invalid_argument, "scalar Eisenstein series needs even k >= 4");
  HEEGCONE_REQUIRE(max_exponent >= 0, ErrorCode::invalid_argument, "negative precision");
  Rational factor = -Rational(2 * k) / bernoulli(k);
  std::vector<Rational> c(static_cast<std::size_t>(max_exponent + 1));
  c[0] = 1;
  for (long n = 1; n <= max_exponent; ++n) c[static_cast<std::size_t>(n)] = factor * Rational(sigma(k - 1, Integer(n)));
  return ScalarQSeries(0, std::move(c));
}

ScalarQSeries partition_series(long max_exponent) {
  std::size_t len = static_cast<std::size_t>(max_exponent + 1);
  std::vector<Rational> p(len, Rational(0));
  p[0] = 1;
  for (std::size_t part = 1; part < len; ++part)
    for (std::size_t n = part; n < len; ++n) p[n] += p[n - part];
  return ScalarQSeries(0, std::move(p));
}

VectorQSeries::VectorQSeries(std::string lattice_ref, Rational weight, std::vector<std::int64_t> orders,
                             Rational max_exponent, std::vector<Component> components)
    : lattice_ref_(std::move(lattice_ref)),
      weight_(std::move(weight)),
      orders_(std::move(orders)),
      max_exponent_(std::move(max_exponent)),
      components_(std::move(components)) {}

Rational VectorQSeries::coefficient(std::size_t index, const Rational& exponent) const {
  HEEGCONE_REQUIRE(index < components_.size(), ErrorCode::coverage, "component index out of range");
  const Component& c = components_[index];
  Rational shift = exponent - c.offset;
  HEEGCONE_REQUIRE(is_integer(shift), ErrorCode::invalid_index,
                   "exponent " + to_string(exponent) + " not in the component's coset");
  HEEGCONE_REQUIRE(exponent <= max_exponent_, ErrorCode::coverage,
                   "exponent " + to_string(exponent) + " beyond truncation " + to_string(max_exponent_));
  long n = shift.get_num().get_si() - c.first;
  if (n < 0) return 0;
  if (n >= static_cast<long>(c.coeffs.size())) return 0;
  return c.coeffs[static_cast<std::size_t>(n)];
}

std::size_t VectorQSeries::index_of(const DiscElement& mu) const {
  HEEGCONE_REQUIRE(mu.coords.size() == orders_.size(), ErrorCode::invalid_argument, "element has wrong shape");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    HEEGCONE_REQUIRE(mu.coords[i] >= 0 && mu.coords[i] < orders_[i], ErrorCode::invalid_argument,
                     "element coordinate out of range");
    idx = idx * static_cast<std::size_t>(orders_[i]) + static_cast<std::size_t>(mu.coords[i]);
  }
  return idx;
}

VectorQSeries VectorQSeries::times(const ScalarQSeries& f, const Rational& bound) const {
  // a component known through max_exponent_ starting at s, times f known through f.max,
  // is known through min(max_exponent_ + f.start, f.max + s)
  Rational top = std::min(bound, Rational(max_exponent_ + f.start()));
  for (const Component& c : components_) {
    Rational limit = Rational(f.max_exponent()) + c.offset + c.first;
    if (limit < top) top = limit;
  }
  std::vector<Component> out;
  for (const Component& c : components_) {
    Component r;
    r.offset = c.offset;
    r.first = c.first + f.start();
    long count = 0;
    while (r.offset + r.first + count <= top) ++count;
    r.coeffs.assign(static_cast<std::size_t>(count), Rational(0));
    for (long i = 0; i < count; ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < c.coeffs.size() && static_cast<long>(j) <= i; ++j) {
        if (c.coeffs[j] == 0) continue;
        s += c.coeffs[j] * f[f.start() + i - static_cast<long>(j)];
      }
      r.coeffs[static_cast<std::size_t>(i)] = s;
    }
    out.push_back(std::move(r));
  }
  return VectorQSeries(lattice_ref_, weight_, orders_, top, std::move(out));
}

CosetNorm coset_min_norm(const EvenLattice& lattice, const DiscGroup& group, const DiscElement& mu, int search_radius) {
  group.check(mu);
  CosetNorm out;
  if (lattice.declared_splits() >= 1) {
    Rational t = frac(-group.q_value(mu));
    out.value = t == 0 ? Rational(1) : t;
    return out;
  }
  out.exact = false;
  RatVector base = group.representative(mu);
  std::size_t n = lattice.rank();
  std::vector<long> v(n, -search_radius);
  bool found = false;
  std::uint64_t visited = 0;
  for (;;) {
    HEEGCONE_REQUIRE(++visited <= default_search_points, ErrorCode::budget_exceeded, "coset search too large");
    RatVector x = base;
    for (std::size_t i = 0; i < n; ++i) x[i] += v[i];
    Rational t = -lattice.norm(x);
    if (t > 0 && (!found || t < out.value)) {
      out.value = t;
      found = true;
    }
    std::size_t i = 0;
    while (i < n && v[i] == search_radius) v[i++] = -search_radius;
    if (i == n) break;
    ++v[i];
  }
  HEEGCONE_REQUIRE(found, ErrorCode::coverage, "no vector of positive -Q found in the search box");
  return out;
}

CosetNorm max_min_norm(const EvenLattice& lattice, int search_radius) {
  DiscGroup group(lattice);
  CosetNorm out;
  out.value = 0;
  for (const auto& mu : group.elements()) {
    CosetNorm t = coset_min_norm(lattice, group, mu, search_radius);
    if (t.value > out.value) out.value = t.value;
    out.exact = out.exact && t.exact;
  }
  return out;
}

}  // namespace heegcone
