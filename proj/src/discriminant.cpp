#include "heegcone/discriminant.hpp"

#include "heegcone/error.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace heegcone {

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t n = m.size();
  IntMatrix a = m;
  IntMatrix v(n, IntVector(n, 0)), vinv(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = vinv[i][i] = 1;

  auto swap_rows = [&](std::size_t i, std::size_t j) { std::swap(a[i], a[j]); };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : v) std::swap(row[i], row[j]);
    std::swap(vinv[i], vinv[j]);
  };
  // col_j -= q col_t, mirrored on V and V^{-1}.
  auto col_sub = [&](std::size_t j, std::size_t t, const Integer& q) {
    for (auto& row : a) row[j] -= q * row[t];
    for (auto& row : v) row[j] -= q * row[t];
    for (std::size_t c = 0; c < n; ++c) vinv[t][c] += q * vinv[j][c];
  };

  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // Move the smallest nonzero entry of the trailing block to (t, t).
      std::size_t bi = n, bj = n;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a[i][j] != 0 && (bi == n || abs(a[i][j]) < abs(a[bi][bj]))) bi = i, bj = j;
      if (bi == n) break;
      if (bi != t) swap_rows(bi, t);
      if (bj != t) swap_cols(bj, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (a[i][t] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t c = t; c < n; ++c) a[i][c] -= q * a[t][c];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        col_sub(j, t, q);
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility of the trailing block by the pivot.
      std::size_t bad = n;
      for (std::size_t i = t + 1; i < n && bad == n; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == n) break;
      for (std::size_t c = t; c < n; ++c) a[t][c] += a[bad][c];
    }
    if (a[t][t] < 0) {
      for (auto& row : a) row[t] = -row[t];
      for (auto& row : v) row[t] = -row[t];
      for (auto& x : vinv[t]) x = -x;
    }
  }
  SmithForm out;
  for (std::size_t i = 0; i < n; ++i) out.diagonal.push_back(a[i][i]);
  out.v = std::move(v);
  out.v_inverse = std::move(vinv);
  return out;
}

DiscGroup::DiscGroup(const EvenLattice& lattice) : gram_(lattice.gram()) {
  const std::size_t n = gram_.size();
  SmithForm snf = smith_normal_form(gram_);
  for (std::size_t i = 0; i < n; ++i) {
    HEEGCONE_REQUIRE(snf.diagonal[i] != 0, ErrorCode::degenerate_lattice, "gram matrix is degenerate");
    if (snf.diagonal[i] == 1) continue;
    HEEGCONE_REQUIRE(snf.diagonal[i].fits_slong_p(), ErrorCode::budget_exceeded, "discriminant group too large");
    const std::int64_t d = snf.diagonal[i].get_si();
    orders_.push_back(d);
    RatVector g(n);
    for (std::size_t r = 0; r < n; ++r) g[r] = Rational(snf.v[r][i], snf.diagonal[i]), g[r].canonicalize();
    generators_.push_back(std::move(g));
    RatVector row(n);
    for (std::size_t c = 0; c < n; ++c) row[c] = snf.v_inverse[i][c];
    vinv_rows_.push_back(std::move(row));
  }
  for (auto d : orders_) size_ *= static_cast<std::uint64_t>(d);
  const std::size_t t = orders_.size();
  gen_q_.resize(t);
  gen_pair_.assign(t, std::vector<Rational>(t));
  Integer lev = 1;
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < t; ++j) {
      Rational s = 0;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          if (gram_[r][c] != 0) s += generators_[i][r] * gram_[r][c] * generators_[j][c];
      gen_pair_[i][j] = s;
    }
    gen_q_[i] = gen_pair_[i][i] / 2;
    lev = lcm(lev, Integer(gen_q_[i].get_den()));
    for (std::size_t j = 0; j < i; ++j) lev = lcm(lev, Integer(gen_pair_[i][j].get_den()));
  }
  level_ = lev.get_si();
}

DiscElement DiscGroup::zero() const { return DiscElement{std::vector<std::int64_t>(orders_.size(), 0)}; }

DiscElement DiscGroup::element(std::uint64_t index) const {
  HEEGCONE_REQUIRE(index < size_, ErrorCode::invalid_argument, "element index out of range");
  DiscElement out = zero();
  for (std::size_t i = orders_.size(); i-- > 0;) {
    out.coords[i] = static_cast<std::int64_t>(index % static_cast<std::uint64_t>(orders_[i]));
    index /= static_cast<std::uint64_t>(orders_[i]);
  }
  return out;
}

std::uint64_t DiscGroup::index_of(const DiscElement& mu) const {
  check(mu);
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i)
    idx = idx * static_cast<std::uint64_t>(orders_[i]) + static_cast<std::uint64_t>(mu.coords[i]);
  return idx;
}

std::vector<DiscElement> DiscGroup::elements() const {
  std::vector<DiscElement> out;
  out.reserve(size_);
  for (std::uint64_t i = 0; i < size_; ++i) out.push_back(element(i));
  return out;
}

void DiscGroup::check(const DiscElement& mu) const {
  HEEGCONE_REQUIRE(mu.coords.size() == orders_.size(), ErrorCode::invalid_argument,
                   "discriminant element has the wrong number of coordinates");
  for (std::size_t i = 0; i < orders_.size(); ++i)
    HEEGCONE_REQUIRE(mu.coords[i] >= 0 && mu.coords[i] < orders_[i], ErrorCode::invalid_argument,
                     "discriminant coordinate out of range");
}

DiscElement DiscGroup::add(const DiscElement& a, const DiscElement& b) const {
  DiscElement out = zero();
  for (std::size_t i = 0; i < orders_.size(); ++i) out.coords[i] = mod(a.coords[i] + b.coords[i], orders_[i]);
  return out;
}

DiscElement DiscGroup::negate(const DiscElement& a) const { return scale(-1, a); }

DiscElement DiscGroup::scale(std::int64_t r, const DiscElement& a) const {
  DiscElement out = zero();
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    const std::int64_t rr = mod(r, orders_[i]);
    out.coords[i] = static_cast<std::int64_t>((static_cast<__int128>(rr) * a.coords[i]) % orders_[i]);
  }
  return out;
}

std::int64_t DiscGroup::order(const DiscElement& mu) const {
  std::int64_t ord = 1;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    const std::int64_t o = orders_[i] / std::gcd(orders_[i], mu.coords[i]);
    ord = std::lcm(ord, o);
  }
  return ord;
}

bool DiscGroup::is_zero(const DiscElement& mu) const {
  for (auto c : mu.coords)
    if (c != 0) return false;
  return true;
}

Rational DiscGroup::q_value(const DiscElement& mu) const {
  Rational s = 0;
  const std::size_t t = orders_.size();
  for (std::size_t i = 0; i < t; ++i) {
    if (mu.coords[i] == 0) continue;
    const Integer ai = mu.coords[i];
    s += ai * ai * gen_q_[i];
    for (std::size_t j = 0; j < i; ++j)
      if (mu.coords[j] != 0) s += ai * Integer(mu.coords[j]) * gen_pair_[i][j];
  }
  return frac(s);
}

Rational DiscGroup::pairing(const DiscElement& a, const DiscElement& b) const {
  Rational s = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i)
    for (std::size_t j = 0; j < orders_.size(); ++j)
      if (a.coords[i] != 0 && b.coords[j] != 0) s += Integer(a.coords[i]) * Integer(b.coords[j]) * gen_pair_[i][j];
  return frac(s);
}

RatVector DiscGroup::representative(const DiscElement& mu) const {
  check(mu);
  const std::size_t n = gram_.size();
  RatVector x(n, Rational(0));
  for (std::size_t i = 0; i < orders_.size(); ++i)
    if (mu.coords[i] != 0)
      for (std::size_t r = 0; r < n; ++r) x[r] += Integer(mu.coords[i]) * generators_[i][r];
  for (auto& c : x) c = frac(c);
  return x;
}

DiscElement DiscGroup::from_vector(const RatVector& x) const {
  const std::size_t n = gram_.size();
  HEEGCONE_REQUIRE(x.size() == n, ErrorCode::invalid_argument, "vector has the wrong dimension");
  for (std::size_t r = 0; r < n; ++r) {
    Rational s = 0;
    for (std::size_t c = 0; c < n; ++c) s += gram_[r][c] * x[c];
    HEEGCONE_REQUIRE(is_integer(s), ErrorCode::invalid_argument, "vector is not in the dual lattice");
  }
  DiscElement out = zero();
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    Rational y = 0;
    for (std::size_t c = 0; c < n; ++c) y += vinv_rows_[i][c] * x[c];
    const Rational a = y * orders_[i];
    HEEGCONE_REQUIRE(is_integer(a), ErrorCode::invalid_argument, "vector is not in the dual lattice");
    out.coords[i] = mod(a.get_num(), Integer(orders_[i])).get_si();
  }
  return out;
}

std::vector<DiscElement> DiscGroup::kernel(std::int64_t r) const { return solve_multiple(r, zero()); }

std::uint64_t DiscGroup::kernel_size(std::int64_t r) const {
  std::uint64_t k = 1;
  for (auto d : orders_) k *= static_cast<std::uint64_t>(std::gcd(r, d));
  return k;
}

std::vector<DiscElement> DiscGroup::solve_multiple(std::int64_t r, const DiscElement& delta) const {
  HEEGCONE_REQUIRE(r >= 1, ErrorCode::invalid_argument, "multiplier must be positive");
  check(delta);
  // r x = delta_i (mod d_i): solvable iff g | delta_i with g = gcd(r, d_i); g solutions.
  std::vector<std::vector<std::int64_t>> choices(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    const std::int64_t d = orders_[i];
    const std::int64_t rr = mod(r, d);
    const std::int64_t g = std::gcd(rr, d);
    if (delta.coords[i] % g != 0) return {};
    const std::int64_t dg = d / g;
    Integer inv = 0;
    if (dg > 1) {
      const Integer base = (rr / g) % dg;
      mpz_invert(inv.get_mpz_t(), base.get_mpz_t(), Integer(dg).get_mpz_t());
    }
    const std::int64_t x0 = mod((Integer(delta.coords[i] / g) * inv), Integer(dg)).get_si();
    for (std::int64_t t = 0; t < g; ++t) choices[i].push_back(x0 + t * dg);
  }
  std::vector<DiscElement> out;
  DiscElement cur = zero();
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == choices.size()) {
      out.push_back(cur);
      return;
    }
    for (auto x : choices[i]) {
      cur.coords[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

std::string DiscGroup::format(const DiscElement& mu) const {
  std::string s = "(";
  for (std::size_t i = 0; i < mu.coords.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(mu.coords[i]);
  }
  return s + ")";
}

}  // namespace heegcone
