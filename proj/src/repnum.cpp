#include "heegcone/repnum.hpp"

#include "heegcone/error.hpp"

#include <algorithm>

namespace heegcone {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 q) { return static_cast<u64>(static_cast<u128>(a) * b % q); }

u64 to_residue(const Integer& x, u64 q) {
  Integer r = mod(x, Integer(static_cast<unsigned long>(q)));
  return r.get_ui();
}

Integer from_u128(u128 v) {
  Integer hi = static_cast<unsigned long>(static_cast<u64>(v >> 64));
  Integer lo = static_cast<unsigned long>(static_cast<u64>(v));
  return (hi << 64) + lo;
}

u128 to_u128(const Integer& z) {
  u128 lo = mpz_getlimbn(z.get_mpz_t(), 0);
  u128 hi = mpz_size(z.get_mpz_t()) > 1 ? mpz_getlimbn(z.get_mpz_t(), 1) : 0;
  return (hi << 64) | lo;
}

std::size_t bits_of(const ResidueHistogram& h) {
  std::size_t b = 0;
  for (const auto& x : h) b = std::max(b, mpz_sizeinbase(x.get_mpz_t(), 2));
  return b;
}

ResidueHistogram cyclic_convolve(const ResidueHistogram& a, const ResidueHistogram& b) {
  const std::size_t q = a.size();
  const std::size_t qbits = mpz_sizeinbase(Integer(static_cast<unsigned long>(q)).get_mpz_t(), 2);
  if (bits_of(a) + bits_of(b) + qbits < 127) {
    std::vector<u128> x(q), y(q), z(q, 0);
    for (std::size_t i = 0; i < q; ++i) x[i] = to_u128(a[i]), y[i] = to_u128(b[i]);
    for (std::size_t i = 0; i < q; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < q; ++j) {
        if (y[j] == 0) continue;
        std::size_t k = i + j;
        if (k >= q) k -= q;
        z[k] += x[i] * y[j];
      }
    }
    ResidueHistogram out(q);
    for (std::size_t i = 0; i < q; ++i) out[i] = from_u128(z[i]);
    return out;
  }
  ResidueHistogram out(q, Integer(0));
  for (std::size_t i = 0; i < q; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < q; ++j) {
      if (b[j] == 0) continue;
      std::size_t k = i + j;
      if (k >= q) k -= q;
      mpz_addmul(out[k].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return out;
}

int residue_ord(u64 r, u64 p, int nu) {
  if (r == 0) return nu;
  int k = 0;
  while (r % p == 0) r /= p, ++k;
  return k;
}

// Radial functions on Z/p^nu are indexed by ord class 0..nu (nu stands for the zero residue).
using Radial = std::vector<Integer>;

// classes[k][i][j] = #{s : ord(s) = i, ord(t - s) = j} for any t of ord class k.
std::vector<std::vector<std::vector<Integer>>> class_table(u64 p, int nu) {
  const u64 q = ipow_u64(p, static_cast<unsigned>(nu));
  std::vector<std::vector<std::vector<Integer>>> table(
      nu + 1, std::vector<std::vector<Integer>>(nu + 1, std::vector<Integer>(nu + 1, Integer(0))));
  for (int k = 0; k <= nu; ++k) {
    const u64 t = k == nu ? 0 : ipow_u64(p, static_cast<unsigned>(k));
    std::vector<std::vector<u64>> c(nu + 1, std::vector<u64>(nu + 1, 0));
    for (u64 s = 0; s < q; ++s) ++c[residue_ord(s, p, nu)][residue_ord((t + q - s) % q, p, nu)];
    for (int i = 0; i <= nu; ++i)
      for (int j = 0; j <= nu; ++j) table[k][i][j] = static_cast<unsigned long>(c[i][j]);
  }
  return table;
}

Radial radial_convolve(const Radial& a, const Radial& b, const std::vector<std::vector<std::vector<Integer>>>& table) {
  const std::size_t n = a.size();
  Radial out(n, Integer(0));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (table[k][i][j] != 0) out[k] += table[k][i][j] * a[i] * b[j];
  return out;
}

Integer class_value(u64 p, int k, int nu) { return k == nu ? Integer(0) : Integer(static_cast<unsigned long>(ipow_u64(p, k))); }

}  // namespace

int w_exponent(const Rational& m, std::int64_t d_mu, std::uint64_t p) {
  HEEGCONE_REQUIRE(m > 0, ErrorCode::invalid_argument, "w_exponent needs m > 0");
  HEEGCONE_REQUIRE(d_mu >= 1, ErrorCode::invalid_argument, "w_exponent needs d_mu >= 1");
  HEEGCONE_REQUIRE(is_prime(p), ErrorCode::invalid_argument, "w_exponent needs a prime");
  const Integer d = d_mu;
  const Rational x = 2 * d * d * m;
  HEEGCONE_REQUIRE(is_integer(x), ErrorCode::invalid_argument, "2 d_mu^2 m is not integral");
  const int ord = valuation(x.get_num(), p) - valuation(d, p);
  return 1 + 2 * ord;
}

Integer rep_count_U(const Integer& m, std::uint64_t p, int nu) {
  HEEGCONE_REQUIRE(nu >= 0, ErrorCode::invalid_argument, "negative exponent");
  if (nu == 0) return 1;
  const int o = m == 0 ? infinite_valuation : valuation(m, p);
  const Integer pn1 = ipow(Integer(static_cast<unsigned long>(p)), nu - 1);
  const Integer pm1 = Integer(static_cast<unsigned long>(p)) - 1;
  if (o < nu) return Integer(o + 1) * pm1 * pn1;
  return Integer(nu) * pm1 * pn1 + pn1 * static_cast<unsigned long>(p);
}

Integer rep_count_UU(const Integer& m, std::uint64_t p, int nu) {
  HEEGCONE_REQUIRE(nu >= 0, ErrorCode::invalid_argument, "negative exponent");
  if (nu == 0) return 1;
  const Integer P = static_cast<unsigned long>(p);
  const int o = m == 0 ? infinite_valuation : valuation(m, p);
  if (o < nu) return ipow(P, 3 * nu - o - 2) * (P + 1) * (ipow(P, o + 1) - 1);
  return ipow(P, 3 * nu) + ipow(P, 3 * nu - 1) - ipow(P, 2 * nu - 1);
}

std::vector<std::uint64_t> histogram_bruteforce(const IntMatrix& gram, const IntVector& g, std::uint64_t a,
                                                std::uint64_t cap) {
  const std::size_t n = gram.size();
  HEEGCONE_REQUIRE(a >= 1, ErrorCode::invalid_argument, "modulus must be positive");
  u128 total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= a;
    HEEGCONE_REQUIRE(total <= cap, ErrorCode::budget_exceeded,
                     "enumeration of " + std::to_string(a) + "^" + std::to_string(n) + " residues exceeds the cap");
  }
  std::vector<u64> hist(a, 0);
  if (a == 1) {
    hist[0] = 1;
    return hist;
  }
  // Incremental odometer: raising x_i by one (mod a) changes the value by
  // w_i + G_ii/2 + g_i, where w = G x; every wrap is also a +1 step mod a.
  std::vector<u64> col_step(n), w(n, 0);
  std::vector<std::vector<u64>> gm(n, std::vector<u64>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) gm[i][j] = to_residue(gram[i][j], a);
    col_step[i] = (to_residue(gram[i][i] / 2, a) + to_residue(g[i], a)) % a;
  }
  std::vector<u64> x(n, 0);
  u64 value = 0;
  const u64 count = static_cast<u64>(total);
  for (u64 step = 0; step < count; ++step) {
    ++hist[value];
    for (std::size_t i = 0; i < n; ++i) {
      value = (value + w[i] + col_step[i]) % a;
      for (std::size_t j = 0; j < n; ++j) w[j] = (w[j] + gm[j][i]) % a;
      if (++x[i] < a) break;
      x[i] = 0;
    }
  }
  return hist;
}

ResidueHistogram histogram_diagonal(const IntMatrix& gram, const IntVector& g, std::uint64_t p, int nu) {
  HEEGCONE_REQUIRE(p % 2 == 1 && is_prime(p), ErrorCode::invalid_argument, "diagonalization needs an odd prime");
  const std::size_t n = gram.size();
  const u64 q = ipow_u64(p, static_cast<unsigned>(nu));
  if (q == 1) return ResidueHistogram{Integer(1)};
  std::vector<std::vector<u64>> a(n, std::vector<u64>(n));
  std::vector<std::vector<u64>> pm(n, std::vector<u64>(n, 0));  // transform, columns act on y
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = to_residue(gram[i][j], q);
    pm[i][i] = 1;
  }
  auto val = [&](u64 x) { return residue_ord(x, p, nu); };
  auto swap_both = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : pm) std::swap(row[i], row[j]);
  };
  for (std::size_t t = 0; t < n; ++t) {
    int best = nu;
    std::size_t bi = n, bj = n;
    for (std::size_t i = t; i < n; ++i)
      for (std::size_t j = t; j < n; ++j) {
        const int v = val(a[i][j]);
        if (v < best || (v == best && bi != n && i == j && bi != bj)) best = v, bi = i, bj = j;
      }
    if (best == nu) break;
    if (bi != bj) {
      // Only off-diagonal entries reach the minimum: x_i -> x_i + x_j makes the diagonal 2 a_ij + ...
      for (std::size_t c = 0; c < n; ++c) a[bi][c] = (a[bi][c] + a[bj][c]) % q;
      for (std::size_t r = 0; r < n; ++r) a[r][bi] = (a[r][bi] + a[r][bj]) % q;
      for (std::size_t r = 0; r < n; ++r) pm[r][bi] = (pm[r][bi] + pm[r][bj]) % q;
    }
    swap_both(bi, t);
    const u64 pv = ipow_u64(p, static_cast<unsigned>(best));
    const u64 unit = a[t][t] / pv;
    Integer inv;
    const Integer unit_z = static_cast<unsigned long>(unit);
    mpz_invert(inv.get_mpz_t(), unit_z.get_mpz_t(), Integer(static_cast<unsigned long>(q)).get_mpz_t());
    const u64 inv_u = inv.get_ui();
    for (std::size_t j = t + 1; j < n; ++j) {
      if (a[j][t] == 0) continue;
      const u64 f = mulmod(a[j][t] / pv, inv_u, q);
      const u64 nf = (q - f) % q;
      for (std::size_t c = 0; c < n; ++c) a[j][c] = (a[j][c] + mulmod(nf, a[t][c], q)) % q;
      for (std::size_t r = 0; r < n; ++r) a[r][j] = (a[r][j] + mulmod(nf, a[r][t], q)) % q;
      for (std::size_t r = 0; r < n; ++r) pm[r][j] = (pm[r][j] + mulmod(nf, pm[r][t], q)) % q;
    }
  }
  const u64 inv2 = (q + 1) / 2;
  ResidueHistogram total;
  for (std::size_t i = 0; i < n; ++i) {
    u64 h = 0;
    for (std::size_t r = 0; r < n; ++r) h = (h + mulmod(pm[r][i], to_residue(g[r], q), q)) % q;
    const u64 c2 = mulmod(a[i][i], inv2, q);
    ResidueHistogram one(q, Integer(0));
    std::vector<u64> cnt(q, 0);
    for (u64 y = 0; y < q; ++y) ++cnt[(mulmod(c2, mulmod(y, y, q), q) + mulmod(h, y, q)) % q];
    for (u64 j = 0; j < q; ++j) one[j] = static_cast<unsigned long>(cnt[j]);
    total = total.empty() ? std::move(one) : cyclic_convolve(total, one);
  }
  if (total.empty()) {
    total.assign(q, Integer(0));
    total[0] = 1;
  }
  return total;
}

Integer rep_count_bruteforce(const EvenLattice& lattice, const Rational& m, const RatVector& mu, const Integer& a,
                             std::uint64_t cap) {
  HEEGCONE_REQUIRE(a >= 1 && a.fits_ulong_p(), ErrorCode::invalid_argument, "modulus out of range");
  const std::size_t n = lattice.rank();
  HEEGCONE_REQUIRE(mu.size() == n, ErrorCode::invalid_argument, "coset vector has the wrong dimension");
  const Rational shift = m - lattice.norm(mu);
  HEEGCONE_REQUIRE(is_integer(shift), ErrorCode::invalid_index, "m is not in Q(mu) + Z");
  IntVector g(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < n; ++j) s += lattice.gram()[i][j] * mu[j];
    HEEGCONE_REQUIRE(is_integer(s), ErrorCode::invalid_argument, "coset vector is not in the dual lattice");
    g[i] = s.get_num();
  }
  const u64 q = a.get_ui();
  auto hist = histogram_bruteforce(lattice.gram(), g, q, cap);
  return static_cast<unsigned long>(hist[to_residue(shift.get_num(), q)]);
}

struct RepCounter::Split {
  u64 modulus = 1;
  int nu = 0;
  std::uint64_t p = 2;
  bool has_rest = false;
  bool has_radial = false;
  ResidueHistogram rest;
  Radial radial;
  std::vector<unsigned char> ord;
};

RepCounter::RepCounter(const EvenLattice& lattice, RepOptions options)
    : lattice_(lattice), group_(lattice), options_(options) {}

Integer RepCounter::target(const Rational& m, const DiscElement& mu) const {
  const RatVector rep = group_.representative(mu);
  const Rational shift = m - lattice_.norm(rep);
  HEEGCONE_REQUIRE(is_integer(shift), ErrorCode::invalid_index, "m is not in Q(mu) + Z");
  return shift.get_num();
}

ResidueHistogram RepCounter::block_histogram(const Block& block, const IntVector& g, std::uint64_t p, int nu) const {
  IntMatrix sub(block.size, IntVector(block.size));
  for (std::size_t i = 0; i < block.size; ++i)
    for (std::size_t j = 0; j < block.size; ++j) sub[i][j] = lattice_.gram()[block.offset + i][block.offset + j];
  auto key = std::make_tuple(sub, g, p, nu);
  {
    std::lock_guard lock(mutex_);
    if (auto it = blocks_.find(key); it != blocks_.end()) return *it->second;
  }
  ResidueHistogram h;
  const u64 q = ipow_u64(p, static_cast<unsigned>(nu));
  if (p % 2 == 1) {
    h = histogram_diagonal(sub, g, p, nu);
  } else {
    auto raw = histogram_bruteforce(sub, g, q, options_.cap);
    h.resize(q);
    for (u64 j = 0; j < q; ++j) h[j] = static_cast<unsigned long>(raw[j]);
  }
  auto stored = std::make_shared<const ResidueHistogram>(h);
  std::lock_guard lock(mutex_);
  blocks_.emplace(std::move(key), stored);
  return h;
}

std::shared_ptr<const RepCounter::Split> RepCounter::split(const DiscElement& mu, std::uint64_t p, int nu) const {
  HEEGCONE_REQUIRE(is_prime(p), ErrorCode::invalid_argument, "prime power with non-prime base");
  HEEGCONE_REQUIRE(nu >= 0 && nu < 62, ErrorCode::invalid_argument, "exponent out of range");
  const auto key = std::make_tuple(group_.index_of(mu), p, nu);
  {
    std::lock_guard lock(mutex_);
    if (auto it = splits_.find(key); it != splits_.end()) return it->second;
  }
  u128 qq = 1;
  for (int i = 0; i < nu; ++i) {
    qq *= p;
    HEEGCONE_REQUIRE(qq <= (u128{1} << 40), ErrorCode::budget_exceeded, "modulus too large for histograms");
  }
  auto out = std::make_shared<Split>();
  out->p = p;
  out->nu = nu;
  out->modulus = static_cast<u64>(qq);
  const u64 q = out->modulus;
  const RatVector rep = group_.representative(mu);
  int hyperbolic = 0;
  for (const Block& b : lattice_.blocks()) {
    IntVector g(b.size);
    bool zero = true;
    for (std::size_t i = 0; i < b.size; ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < b.size; ++j) s += lattice_.gram()[b.offset + i][b.offset + j] * rep[b.offset + j];
      HEEGCONE_REQUIRE(is_integer(s), ErrorCode::invalid_argument, "coset representative does not split over blocks");
      g[i] = s.get_num();
      zero = zero && g[i] == 0;
    }
    if (options_.closed_forms && zero && b.kind == BlockKind::hyperbolic) {
      hyperbolic += 1;
      continue;
    }
    if (options_.closed_forms && zero && b.kind == BlockKind::e8 && p == 2) {
      hyperbolic += 4;
      continue;
    }
    ResidueHistogram h = block_histogram(b, g, p, nu);
    out->rest = out->has_rest ? cyclic_convolve(out->rest, h) : std::move(h);
    out->has_rest = true;
  }
  if (hyperbolic > 0) {
    out->has_radial = true;
    auto table = class_table(p, nu);
    auto closed = [&](bool pair) {
      Radial r(nu + 1);
      for (int k = 0; k <= nu; ++k)
        r[k] = pair ? rep_count_UU(class_value(p, k, nu), p, nu) : rep_count_U(class_value(p, k, nu), p, nu);
      return r;
    };
    Radial acc;
    for (int i = 0; i + 1 < hyperbolic; i += 2) acc = acc.empty() ? closed(true) : radial_convolve(acc, closed(true), table);
    if (hyperbolic % 2 == 1) acc = acc.empty() ? closed(false) : radial_convolve(acc, closed(false), table);
    out->radial = std::move(acc);
  }
  if (out->has_rest && out->has_radial) {
    out->ord.resize(q);
    for (u64 s = 0; s < q; ++s) out->ord[s] = static_cast<unsigned char>(residue_ord(s, p, nu));
  }
  std::lock_guard lock(mutex_);
  auto [it, inserted] = splits_.emplace(key, out);
  return it->second;
}

Integer RepCounter::count_prime_power(const Rational& m, const DiscElement& mu, std::uint64_t p, int nu) const {
  const Integer t = target(m, mu);
  if (nu == 0) return 1;
  auto s = split(mu, p, nu);
  const u64 q = s->modulus;
  const u64 tr = to_residue(t, q);
  if (!s->has_rest && !s->has_radial) return tr == 0 ? 1 : 0;
  if (!s->has_radial) return s->rest[tr];
  if (!s->has_rest) return s->radial[residue_ord(tr, p, nu)];
  Integer sum = 0;
  for (u64 j = 0; j < q; ++j) {
    if (s->rest[j] == 0) continue;
    const u64 d = (tr + q - j) % q;
    mpz_addmul(sum.get_mpz_t(), s->rest[j].get_mpz_t(), s->radial[s->ord[d]].get_mpz_t());
  }
  return sum;
}

ResidueHistogram RepCounter::histogram(const DiscElement& mu, std::uint64_t p, int nu) const {
  const u64 q = ipow_u64(p, static_cast<unsigned>(nu));
  const Rational base = group_.q_value(mu);
  ResidueHistogram out(q);
  for (u64 j = 0; j < q; ++j) out[j] = count_prime_power(base + Integer(static_cast<unsigned long>(j)), mu, p, nu);
  return out;
}

Integer RepCounter::count(const Rational& m, const DiscElement& mu, const Integer& a) const {
  HEEGCONE_REQUIRE(a >= 1, ErrorCode::invalid_argument, "modulus must be positive");
  target(m, mu);
  if (a == 1) return 1;
  Integer out = 1;
  for (auto [p, e] : factor(a)) out *= count_prime_power(m, mu, p, e);
  return out;
}

Integer RepCounter::bruteforce(const Rational& m, const DiscElement& mu, const Integer& a) const {
  return rep_count_bruteforce(lattice_, m, group_.representative(mu), a, options_.cap);
}

Integer rep_count_prime_power(const EvenLattice& lattice, const Rational& m, const DiscElement& mu, std::uint64_t p,
                              int nu, const RepOptions& options) {
  return RepCounter(lattice, options).count_prime_power(m, mu, p, nu);
}

Integer rep_count(const EvenLattice& lattice, const Rational& m, const DiscElement& mu, const Integer& a,
                  const RepOptions& options) {
  return RepCounter(lattice, options).count(m, mu, a);
}

}  // namespace heegcone
