#include "cli.hpp"

#include "CLI11.hpp"
#include "heegcone/cone.hpp"
#include "heegcone/error.hpp"
#include "heegcone/estimates.hpp"
#include "heegcone/io.hpp"
#include "heegcone/parallel.hpp"
#include "heegcone/relation.hpp"
#include "heegcone/repnum.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace heegcone::cli {

namespace {

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::check_failed: return 1;
    case ErrorCode::parse: return 2;
    case ErrorCode::invalid_argument: return 3;
    case ErrorCode::degenerate_lattice: return 4;
    case ErrorCode::budget_exceeded: return 5;
    case ErrorCode::parity_unsupported: return 6;
    case ErrorCode::invalid_index: return 7;
    case ErrorCode::non_positive_index: return 8;
    case ErrorCode::coverage: return 9;
    case ErrorCode::relation_failed: return 10;
  }
  return 1;
}

EvenLattice lattice_of(const RunConfig& c) {
  HEEGCONE_REQUIRE(!c.lattice.empty(), ErrorCode::invalid_argument, "--lattice is required");
  return resolve_lattice(c.lattice);
}

Rational weight_of(const RunConfig& c) {
  HEEGCONE_REQUIRE(c.weight > 0, ErrorCode::invalid_argument, "--weight is required");
  return c.weight;
}

EisensteinOptions options_of(const RunConfig& c) {
  EisensteinOptions o;
  o.mode = parse_mode(c.mode);
  o.level_one_shortcut = c.shortcut;
  o.l_width = c.l_width;
  o.rep.cap = c.cap;
  return o;
}

std::string join_values(const RatVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + to_string(v[i]);
  return out.empty() ? "-" : out;
}

// "level-one" builds Delta E4^a E6^b; anything else is a cusp-basis file.
CuspBasis load_basis(const RunConfig& c, const EvenLattice& lattice, const DiscGroup& group, const Rational& k,
                     long precision) {
  CuspBasis basis;
  if (c.basis.empty()) return basis;
  if (c.basis == "level-one") {
    HEEGCONE_REQUIRE(group.size() == 1, ErrorCode::invalid_argument, "level-one basis needs a unimodular lattice");
    HEEGCONE_REQUIRE(is_integer(k), ErrorCode::invalid_argument, "level-one basis needs an integral weight");
    const auto k_int = static_cast<unsigned>(k.get_num().get_ui());
    for (const auto& f : level_one_cusp_basis(k_int, precision)) basis.forms.push_back(lift_scalar(f, k, lattice.name()));
    return basis;
  }
  std::ifstream in(c.basis);
  HEEGCONE_REQUIRE(in.good(), ErrorCode::invalid_argument, "cannot open basis file " + c.basis);
  basis = read_cusp_basis(in, group);
  for (const auto& f : basis.forms)
    HEEGCONE_REQUIRE(f.weight() == k, ErrorCode::invalid_argument, "basis weight differs from --weight");
  return basis;
}

// Residue pairing against the principal part of h; every form must pair to zero.
std::string validate_basis(CuspBasis& basis, const RelationCertificate& cert) {
  if (basis.forms.empty()) return "none";
  std::string note;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (const auto& t : cert.terms)
      if (!basis.forms[j].covers(t.index.m)) return "unvalidated (basis truncated below the certificate)";
    const Rational r = residue_pair(cert, basis.forms[j]);
    if (r != 0) return "unvalidated (form " + std::to_string(j) + " pairs to " + to_string(r) + ")";
  }
  basis.validated = true;
  return "validated";
}

int cmd_lattice(const RunConfig& c, std::ostream& out) {
  const EvenLattice l = lattice_of(c);
  write_lattice(out, l);
  const DiscGroup g(l);
  out << "# rank: " << l.rank() << "\n";
  out << "# signature: (" << l.sig_plus() << "," << l.sig_minus() << ")\n";
  out << "# determinant: " << l.determinant() << "\n";
  out << "# discriminant_orders:";
  for (auto o : g.orders()) out << " " << o;
  out << "\n# level: " << g.level() << "\n";
  out << "# mu\tQ(mu)\torder\n";
  for (const auto& mu : g.elements())
    out << "# " << format_coords(mu) << "\t" << to_string(g.q_value(mu)) << "\t" << g.order(mu) << "\n";
  return 0;
}

int cmd_repnum(const RunConfig& c, std::ostream& out) {
  const EvenLattice l = lattice_of(c);
  const DiscGroup g(l);
  RepOptions o;
  o.cap = c.cap;
  const Integer a = ipow(Integer(static_cast<unsigned long>(c.prime)), static_cast<unsigned>(c.nu));
  Table t{{"m", "mu", "a", "N"}, {}};
  for (const auto& mu : g.elements())
    for (Rational m = g.q_value(mu); m <= c.mmax; m += 1)
      t.rows.push_back({to_string(m), format_coords(mu), to_string(a),
                        to_string(rep_count_prime_power(l, m, mu, c.prime, c.nu, o))});
  write_table(out, t);
  return 0;
}

int cmd_eis(const RunConfig& c, bool series, std::ostream& out) {
  const EvenLattice l = lattice_of(c);
  const EisensteinSeries e(l, weight_of(c), options_of(c));
  if (series) {
    write_series(out, e.qexp(c.mmax, c.jobs));
    return 0;
  }
  const DiscGroup& g = e.group();
  std::vector<HeegnerIndex> idx;
  for (const auto& mu : g.elements())
    for (Rational m = g.q_value(mu); m <= c.mmax; m += 1) idx.push_back({m, mu});
  std::sort(idx.begin(), idx.end());
  std::vector<Coefficient> values(idx.size());
  parallel_for(idx.size(), c.jobs, [&](std::size_t i) { values[i] = e.coefficient(idx[i].m, idx[i].mu); });
  Table t{{"m", "mu", "value", "kind"}, {}};
  for (const auto& v : values)
    t.rows.push_back({to_string(v.m), format_coords(v.mu), v.value_str(), v.exact ? "exact" : "interval"});
  write_table(out, t);
  return 0;
}

int cmd_heegner(const RunConfig& c, const std::map<std::string, std::string>& args, std::ostream& out) {
  const auto get = [&](const char* k) {
    auto it = args.find(k);
    return it == args.end() ? std::string() : it->second;
  };
  if (!get("k3").empty()) {
    const long d = std::stol(get("k3"));
    const EvenLattice l = build_named("K3(" + std::to_string(d) + ")");
    const DiscGroup g(l);
    if (!get("nl").empty()) {
      const auto comma = get("nl").find(',');
      HEEGCONE_REQUIRE(comma != std::string::npos, ErrorCode::parse, "--nl expects h,a");
      const HeegnerIndex i = k3_index_convert(d, std::stol(get("nl").substr(0, comma)), std::stol(get("nl").substr(comma + 1)));
      out << "m: " << to_string(i.m) << "\nmu: " << format_coords(i.mu) << "\n";
    } else {
      const HeegnerIndex i = make_index(g, parse_rational(get("m")), parse_coords(get("mu").empty() ? "0" : get("mu"), g));
      const NLIndex nl = k3_index_inverse(d, i);
      out << "h: " << nl.h << "\na: " << nl.a << "\n";
    }
    return 0;
  }
  const EvenLattice l = lattice_of(c);
  const DiscGroup g(l);
  HEEGCONE_REQUIRE(!get("m").empty(), ErrorCode::invalid_argument, "--m is required");
  const DiscElement mu = get("mu").empty() ? g.zero() : parse_coords(get("mu"), g);
  const HeegnerIndex index = make_index(g, parse_rational(get("m")), mu);
  const bool from_p = get("from").empty() || get("from") == "P";
  HEEGCONE_REQUIRE(from_p || get("from") == "H", ErrorCode::invalid_argument, "--from must be P or H");
  const FormalDivisor d = from_p ? expand_P_in_H(g, index) : expand_H_in_P(g, index);
  out << (from_p ? "P" : "H") << format_index(g, index) << " = " << d.str(g) << "\n";
  Table t{{"basis", "m", "mu", "coefficient"}, {}};
  for (const auto& [i, coeff] : d.terms())
    t.rows.push_back({from_p ? "H" : "P", to_string(i.m), format_coords(i.mu), to_string(coeff)});
  write_table(out, t);
  return 0;
}

int cmd_relation(const RunConfig& c, std::ostream& out) {
  const EvenLattice l = lattice_of(c);
  const Rational k = weight_of(c);
  const long B = c.B > 0 ? c.B : default_B(l, k);
  const long prec = std::max<long>(B, c.mmax.get_num().get_si() / c.mmax.get_den().get_si());
  const HForm h = build_h(l, k, B, prec, options_of(c), c.jobs);
  const PositivityReport pos = check_h_positivity(h, DiscGroup(l.negated()));
  const RelationCertificate cert = principal_relation(l, h);
  out << "lattice: " << l.name() << "\nweight: " << to_string(k) << "\nB: " << B
      << "\nk_prime: " << to_string(h.k_prime) << "\nt_hat: " << to_string(h.t_hat.value)
      << (h.t_hat.exact ? "" : " (search bound)") << "\nconstant_term: " << to_string(cert.constant_term)
      << "\npositivity: " << (pos.passed() ? "PASS" : "FAIL") << " (" << pos.checked << " coefficients, strict from "
      << to_string(pos.strict_from) << ")\n";
  for (const auto& f : pos.failures) out << "# " << f << "\n";
  const DiscGroup g(l);
  CuspBasis basis = load_basis(c, l, g, k, prec);
  const std::string status = validate_basis(basis, cert);
  out << "basis: " << status << "\n\n";
  Table t{{"m", "mu", "lambda"}, {}};
  for (const auto& term : cert.terms)
    t.rows.push_back({to_string(term.index.m), format_coords(term.index.mu), to_string(term.lambda)});
  write_table(out, t);
  if (!pos.passed()) return exit_code(ErrorCode::check_failed);
  if (!basis.forms.empty() && !basis.validated) return exit_code(ErrorCode::relation_failed);
  return 0;
}

int cmd_cone(const RunConfig& c, std::ostream& out, std::ostream& log) {
  const EvenLattice l = lattice_of(c);
  const Rational k = weight_of(c);
  const EisensteinSeries e(l, k, options_of(c));
  const DiscGroup& g = e.group();
  const long B = c.B > 0 ? c.B : default_B(l, k);
  const Rational top = c.mmax * c.window;
  const long prec = std::max<long>(B, top.get_num().get_si() / top.get_den().get_si() + 1);
  log << "[cone] relation B = " << B << "\n";
  const RelationCertificate cert = principal_relation(l, k, B, options_of(c), c.jobs);
  CuspBasis basis = load_basis(c, l, g, k, prec);
  const std::string status = validate_basis(basis, cert);

  log << "[cone] assembling points up to m = " << to_string(c.mmax) << "\n";
  ConeReport rep;
  std::vector<QRatioRow> diagnostics;
  if (c.primitive) {
    PrimitiveReport p = primitive_cone(e, basis, c.mmax, c.jobs);
    rep = std::move(p.cone);
    diagnostics = std::move(p.diagnostics);
  } else {
    rep = extreme_rays(assemble_points(e, basis, indices_up_to(g, c.mmax), c.jobs));
  }
  rep.basis_validated = basis.validated;
  // The relation lives on H-points, which the primitive run does not carry.
  const std::size_t bmax = static_cast<std::size_t>(B);
  std::vector<ConePoint> hpoints =
      c.primitive ? assemble_points(e, basis, indices_up_to(g, Rational(static_cast<long>(bmax))), c.jobs) : rep.points;
  const InteriorVerdict interior = interior_certificate(hpoints, cert, basis.size());
  log << "[cone] truncation scan to m = " << to_string(top) << "\n";
  const TruncationReport trunc = truncation_scan(
      [&](const Rational& bound) {
        return assemble_points(e, basis, indices_up_to(g, bound), c.jobs, c.primitive);
      },
      c.mmax, c.window);

  out << "lattice: " << l.name() << "\nweight: " << to_string(k) << "\ndivisors: " << (c.primitive ? "P" : "H")
      << "\nbasis: " << basis.size() << " forms, " << status << "\nmax_m: " << to_string(c.mmax)
      << "\nmethod: " << rep.method << "\npoints: " << rep.points.size() << "\nrays: " << rep.rays.size() << "\n";
  for (auto r : rep.rays) {
    const ConePoint& p = rep.points[r];
    out << "ray\t" << p.tag << "\tgamma=" << to_string(p.gamma) << "\ts=" << join_values(p.s)
        << "\ts/gamma=" << join_values(p.normalized()) << (p.interval_gamma ? "\tinterval" : "") << "\n";
  }
  for (const auto& cert_i : rep.certificates) {
    out << "certificate\t" << rep.points[cert_i.point].tag;
    for (const auto& [ray, lambda] : cert_i.lambda) out << "\t" << rep.points[ray].tag << "*" << to_string(lambda);
    out << "\n";
  }
  out << "certificates_verify: " << (rep.verify() ? "yes" : "no") << "\n";
  out << "interior: " << interior.message << " (zero_sum=" << interior.zero_sum << ", positive=" << interior.positive
      << ", spans=" << interior.spans << ", sub_spans=" << interior.sub_spans << ")\n";
  out << "interior_gamma: " << to_string(interior.gamma_sum) << "\n";
  out << "interior_combination:";
  for (const auto& [i, lambda] : interior.combination) out << "\t" << hpoints[i].tag << "*" << to_string(lambda);
  out << "\n";
  out << "truncation: base " << to_string(trunc.base_bound) << ", window " << to_string(trunc.window_bound)
      << ", rays " << (trunc.stable() ? "stable" : "changed") << "\n";
  out << "truncation_norms: base_max=" << to_string(trunc.base_max_norm)
      << " window_max=" << to_string(trunc.window_max_norm) << " min_ray=" << to_string(trunc.min_ray_norm) << "\n";
  out << "completeness: stable under doubling only; no certified truncation bound\n\n";

  Table t{{"tag", "m", "mu", "gamma", "s", "s/gamma", "ray"}, {}};
  for (std::size_t i = 0; i < rep.points.size(); ++i) {
    const ConePoint& p = rep.points[i];
    const bool is_ray = std::find(rep.rays.begin(), rep.rays.end(), i) != rep.rays.end();
    t.rows.push_back({p.tag, p.index ? to_string(p.index->m) : "-", p.index ? format_coords(p.index->mu) : "-",
                      to_string(p.gamma), join_values(p.s), join_values(p.normalized()), is_ray ? "1" : "0"});
  }
  write_table(out, t);
  if (!diagnostics.empty()) {
    out << "\n";
    Table d{{"Delta", "delta", "Q/eps"}, {}};
    for (const auto& row : diagnostics) d.rows.push_back({to_string(row.index.m), format_coords(row.index.mu), to_string(row.value)});
    write_table(out, d);
  }
  return rep.verify() && interior.certified ? 0 : exit_code(ErrorCode::check_failed);
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& log) {
  SuiteConfig s = c.suite;
  s.jobs = c.jobs;
  const auto reports = run_suite(s, [&](const std::string& msg) { log << "[verify] " << msg << "\n"; });
  bool ok = true;
  for (const auto& r : reports) {
    out << r.summary() << "\n";
    for (const auto& row : r.rows)
      if (!row.pass) out << "  fail\t" << row.point << "\t" << row.value << "\t" << row.bound << "\n";
    ok = ok && r.passed();
  }
  return ok ? 0 : exit_code(ErrorCode::check_failed);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& log) {
  CLI::App app{"Heegner divisor cones of orthogonal modular varieties"};
  app.require_subcommand(1);
  app.fallthrough();

  std::map<std::string, std::string> flags;
  std::string config_path;
  app.add_option("--config", config_path, "key = value file; flags override it");
  const std::vector<std::pair<std::string, std::string>> common{
      {"lattice", "named constructor (e.g. E8^4+U^2) or lattice file"},
      {"weight", "weight k as p/q"},
      {"mmax", "index bound"},
      {"basis", "cusp-basis file or level-one"},
      {"mode", "exact or interval"},
      {"cap", "enumeration cap"},
      {"out", "output file (default stdout)"},
      {"jobs", "worker threads"},
      {"B", "pole order of the relation form (default: smallest admissible)"},
      {"window", "truncation window factor"},
      {"l_width", "L-value enclosure width"},
      {"prime", "prime for repnum"},
      {"nu", "exponent for repnum"}};
  std::map<std::string, CLI::Option*> opts;
  for (const auto& [key, help] : common) opts[key] = app.add_option("--" + key, flags[key], help);
  bool primitive = false, no_shortcut = false, series = false;
  app.add_flag("--primitive", primitive, "use primitive Heegner divisors");
  app.add_flag("--no-shortcut", no_shortcut, "local densities even on unimodular lattices");

  std::map<std::string, std::string> hargs;
  auto* lattice = app.add_subcommand("lattice", "lattice file and discriminant form");
  auto* repnum = app.add_subcommand("repnum", "representation numbers mod p^nu");
  auto* eis = app.add_subcommand("eis", "Eisenstein coefficients");
  eis->add_flag("--series", series, "emit a series file instead of a table");
  auto* heegner = app.add_subcommand("heegner", "Heegner index algebra");
  for (const char* k : {"m", "mu", "from", "k3", "nl"}) heegner->add_option(std::string("--") + k, hargs[k]);
  auto* relation = app.add_subcommand("relation", "build h and its principal-part certificate");
  auto* cone = app.add_subcommand("cone", "extreme rays of the Heegner cone");
  auto* verify = app.add_subcommand("verify", "finite verification suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help, err;
    const int rc = app.exit(e, help, err);
    out << help.str();
    log << err.str();
    return rc == 0 ? 0 : exit_code(ErrorCode::parse);
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      HEEGCONE_REQUIRE(in.good(), ErrorCode::parse, "cannot open config " + config_path);
      cfg = read_config(in);
    }
    for (const auto& [key, opt] : opts)
      if (opt->count() > 0) set_config_key(cfg, key, flags[key]);
    if (primitive) cfg.primitive = true;
    if (no_shortcut) cfg.shortcut = false;

    std::ostringstream buffer;
    int rc = 0;
    if (lattice->parsed()) rc = cmd_lattice(cfg, buffer);
    else if (repnum->parsed()) rc = cmd_repnum(cfg, buffer);
    else if (eis->parsed()) rc = cmd_eis(cfg, series, buffer);
    else if (heegner->parsed()) rc = cmd_heegner(cfg, hargs, buffer);
    else if (relation->parsed()) rc = cmd_relation(cfg, buffer);
    else if (cone->parsed()) rc = cmd_cone(cfg, buffer, log);
    else if (verify->parsed()) rc = cmd_verify(cfg, buffer, log);
    if (cfg.out.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(cfg.out);
      HEEGCONE_REQUIRE(file.good(), ErrorCode::invalid_argument, "cannot write " + cfg.out);
      file << buffer.str();
    }
    return rc;
  } catch (const Error& e) {
    log << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return exit_code(ErrorCode::invalid_argument);
  }
}

}  // namespace heegcone::cli
