#include "heegcone/estimates.hpp"

#include "heegcone/arith.hpp"
#include "heegcone/error.hpp"
#include "heegcone/parallel.hpp"

namespace heegcone {

bool ScanReport::passed() const { return failures() == 0; }

std::size_t ScanReport::failures() const {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.pass ? 0 : 1;
  return n;
}

std::string ScanReport::summary() const {
  return std::string(passed() ? "PASS " : "FAIL ") + name + ": " + std::to_string(rows.size()) + " points, " +
         std::to_string(failures()) + " failures, margin " + margin;
}

std::string to_string(SplitKind kind) { return kind == SplitKind::U ? "U" : "UU"; }

std::vector<RepGridPoint> full_rep_grid(const EvenLattice& lattice, const std::vector<std::uint64_t>& primes,
                                        int max_nu) {
  const DiscGroup g(lattice);
  std::vector<RepGridPoint> out;
  for (auto p : primes)
    for (int nu = 1; nu <= max_nu; ++nu) {
      const std::uint64_t q = ipow_u64(p, static_cast<unsigned>(nu));
      for (const auto& mu : g.elements())
        for (std::uint64_t j = 0; j < q; ++j)
          out.push_back({p, nu, g.q_value(mu) + Integer(static_cast<unsigned long>(j)), mu});
    }
  return out;
}

ScanReport check_rep_bounds(const EvenLattice& lattice, SplitKind split, const std::vector<RepGridPoint>& grid,
                            const RepOptions& options) {
  const int need = split == SplitKind::U ? 1 : 2;
  HEEGCONE_REQUIRE(lattice.declared_splits() >= need, ErrorCode::invalid_argument,
                   "lattice does not declare a " + to_string(split) + " split");
  const RepCounter counter(lattice, options);
  ScanReport rep;
  rep.name = "rep bounds " + to_string(split) + " on " + lattice.name();
  std::optional<Rational> slack;
  const long rank = static_cast<long>(lattice.rank());
  for (const auto& pt : grid) {
    const Integer n = counter.count_prime_power(pt.m, pt.mu, pt.p, pt.nu);
    const Rational value = ratio(n, ipow(Integer(pt.p), static_cast<unsigned>((rank - 1) * pt.nu)));
    const Rational p(pt.p);
    const Rational lo = split == SplitKind::U ? Rational(1 - 1 / p) : Rational(1 - 1 / (p * p));
    const Rational hi = split == SplitKind::U ? Rational(pt.nu + 1) : Rational(1 + 1 / p);
    ScanRow row;
    row.point = "p=" + std::to_string(pt.p) + " nu=" + std::to_string(pt.nu) + " m=" + to_string(pt.m) +
                " mu=" + counter.group().format(pt.mu);
    row.value = to_string(value);
    row.bound = "[" + to_string(lo) + ", " + to_string(hi) + "]";
    row.pass = lo <= value && value <= hi;
    const Rational s = std::min(Rational(value - lo), Rational(hi - value));
    if (!slack || s < *slack) slack = s;
    rep.rows.push_back(std::move(row));
  }
  rep.margin = slack ? to_string(*slack) : "none";
  return rep;
}

ScanReport eis_growth_scan(const EisensteinSeries& eis, const Rational& max_m, std::optional<Rational> exponent,
                           unsigned jobs) {
  const Rational ex = exponent.value_or(eis.weight() - 1);
  const DiscGroup& g = eis.group();
  std::vector<HeegnerIndex> idx;
  for (const auto& mu : g.elements()) {
    Rational m = g.q_value(mu);
    if (m == 0) m = 1;
    for (; m <= max_m; m += 1) idx.push_back({m, mu});
  }
  std::vector<Coefficient> coeffs(idx.size());
  parallel_for(idx.size(), jobs, [&](std::size_t i) { coeffs[i] = eis.coefficient(idx[i].m, idx[i].mu); });
  ScanReport rep;
  rep.name = "Eisenstein growth on " + eis.lattice().name() + " k=" + to_string(eis.weight()) +
             " exponent " + to_string(ex) + " m<=" + to_string(max_m);
  std::optional<Interval> best;
  std::string where;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const Coefficient& c = coeffs[i];
    ScanRow row;
    row.point = "m=" + to_string(idx[i].m) + " mu=" + g.format(idx[i].mu);
    row.value = c.value_str();
    row.bound = "< 0";
    row.pass = c.sign() == -1;
    Interval r = -c.as_interval();
    if (is_integer(ex) && ex >= 0) r /= Interval(rpow(idx[i].m, ex.get_num().get_si()));
    else r /= rational_power(idx[i].m, ex);
    if (!best || r.lower() < best->lower()) {
      best = r;
      where = row.point;
    }
    rep.rows.push_back(std::move(row));
  }
  if (best) {
    ScanRow pos;
    pos.point = "grid minimum";
    pos.value = best->lower() == best->upper() ? to_string(best->lower()) : best->str();
    pos.bound = "> 0";
    pos.pass = best->positive();
    rep.rows.push_back(pos);
    rep.margin = (best->width() == 0 ? to_string(best->lower()) : best->rounded(64).str()) + " at " + where;
  } else {
    rep.margin = "none";
  }
  return rep;
}

std::vector<EpsRatioPoint> epsilon_ratio_grid(const DiscGroup& group, const Rational& max_delta) {
  std::vector<EpsRatioPoint> out;
  for (const auto& delta : group.elements()) {
    Rational d = group.q_value(delta);
    if (d == 0) d = 1;
    for (; d <= max_delta; d += 1) {
      const HeegnerIndex index{d, delta};
      for (const auto& [r, mu] : square_divisors(group, index)) out.push_back({index, r, mu});
    }
  }
  return out;
}

ScanReport epsilon_ratio_check(const EisensteinSeries& eis, const std::vector<EpsRatioPoint>& grid) {
  HEEGCONE_REQUIRE(eis.lattice().declared_splits() >= 2, ErrorCode::invalid_argument,
                   "epsilon ratio bound needs a declared U+U split");
  const DiscGroup& g = eis.group();
  ScanReport rep;
  rep.name = "epsilon ratio on " + eis.lattice().name();
  std::optional<Rational> slack;
  for (const auto& pt : grid) {
    HEEGCONE_REQUIRE(g.scale(pt.r, pt.mu) == pt.index.mu, ErrorCode::invalid_index, "r mu != delta");
    const Rational reduced = pt.index.m / Rational(pt.r * pt.r);
    const Rational top = eis.epsilon(reduced, pt.mu, EpsilonFormula::divisor_sum);
    const Rational bottom = eis.epsilon(pt.index.m, pt.index.mu, EpsilonFormula::divisor_sum);
    const Rational value = top / bottom;
    Rational bound = 1;
    for (auto [p, e] : factor(static_cast<std::uint64_t>(pt.r))) bound *= Rational(p) / Rational(p - 1);
    ScanRow row;
    row.point = "Delta=" + to_string(pt.index.m) + " delta=" + g.format(pt.index.mu) + " r=" + std::to_string(pt.r) +
                " mu=" + g.format(pt.mu);
    row.value = to_string(value);
    row.bound = "<= " + to_string(bound);
    row.pass = value <= bound;
    if (!slack || bound - value < *slack) slack = bound - value;
    rep.rows.push_back(std::move(row));
  }
  rep.margin = slack ? to_string(*slack) : "none";
  return rep;
}

QRatio q_ratio(const EisensteinSeries& eis, const HeegnerIndex& index) {
  const DiscGroup& g = eis.group();
  const long two_k_minus_2 = Rational(2 * eis.weight() - 2).get_num().get_si();
  QRatio out;
  out.q = 0;
  for (const auto& [r, mu] : square_divisors(g, index)) {
    const int mob = moebius(static_cast<std::uint64_t>(r));
    if (mob == 0) continue;
    out.q += Rational(mob) * rpow(Rational(r), -two_k_minus_2) *
             eis.epsilon(index.m / Rational(r * r), mu, EpsilonFormula::divisor_sum);
  }
  out.eps = eis.epsilon(index.m, index.mu, EpsilonFormula::divisor_sum);
  out.value = out.q / out.eps;
  return out;
}

ScanReport q_ratio_scan(const EisensteinSeries& eis, const Rational& max_delta) {
  HEEGCONE_REQUIRE(eis.lattice().declared_splits() >= 2, ErrorCode::invalid_argument,
                   "q ratio bound needs a declared U+U split");
  const Interval bound = euler_product_constant(EulerConstant::cone_bound, Rational(1, 1000000));
  const DiscGroup& g = eis.group();
  ScanReport rep;
  rep.name = "Q(Delta,delta)/eps on " + eis.lattice().name();
  std::optional<Rational> least;
  for (const auto& delta : g.elements()) {
    Rational d = g.q_value(delta);
    if (d == 0) d = 1;
    for (; d <= max_delta; d += 1) {
      const QRatio q = q_ratio(eis, {d, delta});
      ScanRow row;
      row.point = "Delta=" + to_string(d) + " delta=" + g.format(delta);
      row.value = to_string(q.value);
      row.bound = ">= " + bound.str();
      row.pass = q.value >= bound.upper();
      if (!least || q.value < *least) least = q.value;
      rep.rows.push_back(std::move(row));
    }
  }
  rep.margin = least ? "min ratio " + to_string(*least) : "none";
  return rep;
}

namespace {

ScanReport constants_report(const Rational& width) {
  ScanReport rep;
  rep.name = "Euler product constants";
  const Interval landau = euler_product_constant(EulerConstant::landau, width);
  const Interval artin = euler_product_constant(EulerConstant::artin, width);
  const Interval cone = euler_product_constant(EulerConstant::cone_bound, width);
  auto add = [&](const std::string& name, const Interval& x, const Rational& digits) {
    ScanRow row;
    row.point = name;
    row.value = x.rounded(64).str();
    row.bound = "within [" + to_string(digits) + ", +1e-6], width <= " + to_string(width);
    row.pass = x.width() <= width && digits <= x.lower() && x.upper() <= digits + Rational(1, 1000000);
    rep.rows.push_back(row);
  };
  add("landau", landau, ratio(1943596, 1000000));
  add("artin", artin, ratio(373955, 1000000));
  add("cone_bound", cone, ratio(215179, 1000000));
  ScanRow pos;
  pos.point = "cone_bound > 0";
  pos.value = cone.rounded(64).str();
  pos.bound = "> 0";
  pos.pass = cone.positive();
  rep.rows.push_back(pos);
  rep.margin = "cone_bound lower end " + to_string(cone.rounded(64).lower());
  return rep;
}

}  // namespace

std::vector<ScanReport> run_suite(const SuiteConfig& config, const Progress& progress) {
  auto note = [&](const std::string& s) {
    if (progress) progress(s);
  };
  std::vector<ScanReport> out;
  for (const auto& name : config.rep_lattices_u) {
    note("rep bounds U on " + name);
    const EvenLattice l = build_named(name);
    out.push_back(check_rep_bounds(l, SplitKind::U, full_rep_grid(l, config.rep_primes, config.rep_max_nu)));
  }
  for (const auto& name : config.rep_lattices_uu) {
    note("rep bounds UU on " + name);
    const EvenLattice l = build_named(name);
    out.push_back(check_rep_bounds(l, SplitKind::UU, full_rep_grid(l, config.rep_primes, config.rep_max_nu)));
  }
  EisensteinOptions plain;
  plain.level_one_shortcut = false;
  note("Eisenstein growth");
  const EisensteinSeries uu(build_named("U^2"), 2, plain);
  out.push_back(eis_growth_scan(uu, config.growth_m_u2, std::nullopt, config.jobs));
  out.push_back(eis_growth_scan(uu, config.growth_m_u2, config.growth_k2_exponent, config.jobs));
  const EisensteinSeries e8(build_named("E8+U^2"), 6, plain);
  out.push_back(eis_growth_scan(e8, config.growth_m_e8, std::nullopt, config.jobs));
  const EisensteinSeries odd(build_named("rank1(2)+U^2"), Rational(5, 2));
  out.push_back(eis_growth_scan(odd, config.growth_m_odd, std::nullopt, config.jobs));
  for (const auto& name : config.ratio_lattices) {
    const EvenLattice l = build_named(name);
    const Rational k = ratio(Integer(static_cast<unsigned long>(l.rank())), 2);
    const EisensteinSeries e(l, k, plain);
    note("epsilon ratio and Q ratio on " + name);
    out.push_back(epsilon_ratio_check(e, epsilon_ratio_grid(e.group(), config.ratio_max_delta)));
    out.push_back(q_ratio_scan(e, config.ratio_max_delta));
  }
  note("Euler product constants");
  out.push_back(constants_report(config.constant_width));
  return out;
}

}  // namespace heegcone
