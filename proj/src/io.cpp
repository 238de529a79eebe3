#include "heegcone/io.hpp"

#include "heegcone/error.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace heegcone {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::parse, what); }

long parse_long(const std::string& s) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) parse_error("not an integer: '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    parse_error("not an integer: '" + s + "'");
  }
}

bool parse_bool(const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  parse_error("not a boolean: '" + s + "'");
}

Rational parse_rat(const std::string& s) {
  try {
    return parse_rational(s);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    parse_error("not a rational: '" + s + "'");
  }
}

// "key: value" header line; returns false on the first line that is not one.
bool header_line(const std::string& line, std::string& key, std::string& value) {
  const auto colon = line.find(':');
  if (colon == std::string::npos) return false;
  key = trim(line.substr(0, colon));
  if (key.empty() || key.find_first_of(" \t") != std::string::npos) return false;
  value = trim(line.substr(colon + 1));
  return true;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

struct SeriesHeader {
  std::string lattice;
  Rational weight;
  Rational truncation;
  std::size_t size = 1;
};

// Reads header keys until the first data line, which is returned through `first`.
SeriesHeader read_header(std::istream& is, bool with_size, std::string& first) {
  SeriesHeader h;
  bool have_weight = false, have_trunc = false, have_size = !with_size;
  std::string line, key, value;
  first.clear();
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (!header_line(line, key, value)) {
      first = line;
      break;
    }
    if (key == "lattice") h.lattice = value;
    else if (key == "weight") h.weight = parse_rat(value), have_weight = true;
    else if (key == "truncation") h.truncation = parse_rat(value), have_trunc = true;
    else if (key == "size" && with_size) h.size = static_cast<std::size_t>(parse_long(value)), have_size = true;
    else parse_error("unknown header key '" + key + "'");
  }
  if (!have_weight || !have_trunc || !have_size) parse_error("series header incomplete");
  return h;
}

std::vector<VectorQSeries::Component> empty_components(const DiscGroup& group) {
  std::vector<VectorQSeries::Component> comps;
  for (const auto& mu : group.elements()) {
    VectorQSeries::Component c;
    c.offset = group.q_value(mu);
    comps.push_back(c);
  }
  return comps;
}

// Stores value at exponent e in c, growing the dense window as needed.
void place(VectorQSeries::Component& c, const Rational& e, const Rational& value) {
  const Rational shift = e - c.offset;
  if (!is_integer(shift)) parse_error("exponent " + to_string(e) + " is off the component's coset");
  const long n = shift.get_num().get_si();
  if (c.coeffs.empty()) {
    c.first = n;
    c.coeffs.push_back(value);
    return;
  }
  if (n < c.first) {
    c.coeffs.insert(c.coeffs.begin(), static_cast<std::size_t>(c.first - n), Rational(0));
    c.first = n;
  }
  const auto at = static_cast<std::size_t>(n - c.first);
  if (at >= c.coeffs.size()) c.coeffs.resize(at + 1, Rational(0));
  c.coeffs[at] = value;
}

void for_each_coefficient(const VectorQSeries& s,
                          const std::function<void(std::size_t, const Rational&, const Rational&)>& fn) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& c = s.components()[i];
    for (std::size_t j = 0; j < c.coeffs.size(); ++j) fn(i, c.offset + c.first + static_cast<long>(j), c.coeffs[j]);
  }
}

DiscElement element_at(const std::vector<std::int64_t>& orders, std::size_t index) {
  DiscElement mu;
  mu.coords.assign(orders.size(), 0);
  for (std::size_t i = orders.size(); i-- > 0;) {
    mu.coords[i] = static_cast<std::int64_t>(index % static_cast<std::size_t>(orders[i]));
    index /= static_cast<std::size_t>(orders[i]);
  }
  return mu;
}

}  // namespace

void write_lattice(std::ostream& os, const EvenLattice& lattice) {
  os << "name: " << lattice.name() << "\n";
  os << "constructor: " << lattice.constructor() << "\n";
  os << "declared_splits: " << lattice.declared_splits() << "\n";
  os << "blocks:";
  for (const auto& b : lattice.blocks()) os << " " << to_string(b.kind) << "@" << b.offset << ":" << b.size;
  os << "\ngram:\n";
  for (const auto& row : lattice.gram()) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
    os << "\n";
  }
}

EvenLattice read_lattice(std::istream& is) {
  std::string name, constructor, line, key, value;
  int splits = 0;
  std::vector<Block> blocks;
  IntMatrix gram;
  bool in_gram = false;
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (in_gram) {
      IntVector row;
      for (const auto& w : words(line)) {
        Integer z;
        if (z.set_str(w, 10) != 0) parse_error("bad Gram entry '" + w + "'");
        row.push_back(z);
      }
      gram.push_back(row);
      continue;
    }
    if (!header_line(line, key, value)) parse_error("expected 'key: value', got '" + line + "'");
    if (key == "name") name = value;
    else if (key == "constructor") constructor = value;
    else if (key == "declared_splits") splits = static_cast<int>(parse_long(value));
    else if (key == "blocks") {
      for (const auto& w : words(value)) {
        const auto at = w.find('@'), colon = w.find(':');
        if (at == std::string::npos || colon == std::string::npos || colon < at) parse_error("bad block '" + w + "'");
        Block b;
        b.kind = parse_block_kind(w.substr(0, at));
        b.offset = static_cast<std::size_t>(parse_long(w.substr(at + 1, colon - at - 1)));
        b.size = static_cast<std::size_t>(parse_long(w.substr(colon + 1)));
        blocks.push_back(b);
      }
    } else if (key == "gram") {
      if (!value.empty()) parse_error("Gram rows start on the line after 'gram:'");
      in_gram = true;
    } else {
      parse_error("unknown lattice key '" + key + "'");
    }
  }
  if (gram.empty()) parse_error("lattice file has no Gram matrix");
  return EvenLattice(gram, name, splits, blocks, constructor);
}

EvenLattice resolve_lattice(const std::string& source) {
  std::ifstream in(source);
  if (in) return read_lattice(in);
  return build_named(source);
}

std::string format_coords(const DiscElement& mu) {
  if (mu.coords.empty()) return "-";
  std::vector<std::string> parts;
  for (auto c : mu.coords) parts.push_back(std::to_string(c));
  return join(parts, ",");
}

DiscElement parse_coords(const std::string& text, const DiscGroup& group) {
  DiscElement mu;
  if (text != "-")
    for (const auto& part : split(text, ',')) mu.coords.push_back(parse_long(part));
  if (mu.coords.size() != group.orders().size()) parse_error("element '" + text + "' has the wrong number of coordinates");
  for (std::size_t i = 0; i < mu.coords.size(); ++i)
    if (mu.coords[i] < 0 || mu.coords[i] >= group.orders()[i]) parse_error("element '" + text + "' is not reduced");
  return mu;
}

void write_series(std::ostream& os, const VectorQSeries& series) {
  os << "lattice: " << series.lattice_ref() << "\n";
  os << "weight: " << to_string(series.weight()) << "\n";
  os << "truncation: " << to_string(series.max_exponent()) << "\n";
  for_each_coefficient(series, [&](std::size_t i, const Rational& e, const Rational& v) {
    os << format_coords(element_at(series.orders(), i)) << "\t" << to_string(e) << "\t" << to_string(v) << "\n";
  });
}

VectorQSeries read_series(std::istream& is, const DiscGroup& group) {
  std::string line;
  const SeriesHeader h = read_header(is, false, line);
  auto comps = empty_components(group);
  do {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto w = words(line);
    if (w.size() != 3) parse_error("series row needs 3 fields: '" + line + "'");
    const DiscElement mu = parse_coords(w[0], group);
    const Rational e = parse_rat(w[1]);
    if (e > h.truncation) parse_error("exponent " + w[1] + " beyond truncation");
    place(comps[group.index_of(mu)], e, parse_rat(w[2]));
  } while (std::getline(is, line));
  return VectorQSeries(h.lattice, h.weight, group.orders(), h.truncation, std::move(comps));
}

void write_cusp_basis(std::ostream& os, const CuspBasis& basis) {
  HEEGCONE_REQUIRE(!basis.forms.empty(), ErrorCode::invalid_argument, "cannot write an empty cusp basis");
  const VectorQSeries& f0 = basis.forms.front();
  os << "lattice: " << f0.lattice_ref() << "\n";
  os << "weight: " << to_string(f0.weight()) << "\n";
  os << "truncation: " << to_string(f0.max_exponent()) << "\n";
  os << "size: " << basis.size() << "\n";
  std::map<std::pair<std::size_t, Rational>, std::vector<Rational>> rows;
  for (std::size_t j = 0; j < basis.size(); ++j)
    for_each_coefficient(basis.forms[j], [&](std::size_t i, const Rational& e, const Rational& v) {
      if (e <= 0 || e > f0.max_exponent()) return;
      auto& row = rows[{i, e}];
      row.resize(basis.size(), Rational(0));
      row[j] = v;
    });
  for (const auto& [key, values] : rows) {
    os << format_coords(element_at(f0.orders(), key.first)) << "\t" << to_string(key.second);
    for (const auto& v : values) os << "\t" << to_string(v);
    os << "\n";
  }
}

CuspBasis read_cusp_basis(std::istream& is, const DiscGroup& group) {
  std::string line;
  const SeriesHeader h = read_header(is, true, line);
  std::vector<std::vector<VectorQSeries::Component>> comps(h.size, empty_components(group));
  if (!line.empty()) do {
      line = trim(line);
      if (line.empty() || line[0] == '#') continue;
      const auto w = words(line);
      if (w.size() != 2 + h.size) parse_error("cusp-basis row needs " + std::to_string(2 + h.size) + " fields");
      const DiscElement mu = parse_coords(w[0], group);
      const Rational e = parse_rat(w[1]);
      if (e <= 0) parse_error("cusp forms have positive exponents only");
      if (e > h.truncation) parse_error("exponent " + w[1] + " beyond truncation");
      for (std::size_t j = 0; j < h.size; ++j) place(comps[j][group.index_of(mu)], e, parse_rat(w[2 + j]));
    } while (std::getline(is, line));
  CuspBasis basis;
  for (auto& c : comps) basis.forms.emplace_back(h.lattice, h.weight, group.orders(), h.truncation, std::move(c));
  return basis;
}

void write_table(std::ostream& os, const Table& table) {
  os << join(table.header, "\t") << "\n";
  for (const auto& row : table.rows) os << join(row, "\t") << "\n";
}

Table read_table(std::istream& is) {
  Table t;
  std::string line;
  if (!std::getline(is, line)) parse_error("empty table");
  t.header = split(line, '\t');
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto row = split(line, '\t');
    if (row.size() != t.header.size()) parse_error("table row has " + std::to_string(row.size()) + " fields");
    t.rows.push_back(std::move(row));
  }
  return t;
}

namespace {

std::vector<std::string> parse_list(const std::string& v) {
  std::vector<std::string> out;
  if (v.empty()) return out;
  for (auto& s : split(v, ',')) {
    if (s.empty()) parse_error("empty list entry in '" + v + "'");
    out.push_back(s);
  }
  return out;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace

void set_config_key(RunConfig& c, const std::string& key, const std::string& v) {
  SuiteConfig& s = c.suite;
  if (key == "lattice") c.lattice = v;
  else if (key == "weight") c.weight = parse_rat(v);
  else if (key == "mmax") c.mmax = parse_rat(v);
  else if (key == "basis") c.basis = v;
  else if (key == "mode") {
    if (v != "exact" && v != "interval") parse_error("mode must be exact or interval");
    c.mode = v;
  } else if (key == "cap") {
    const long cap = parse_long(v);
    if (cap <= 0) parse_error("cap must be positive");
    c.cap = static_cast<std::uint64_t>(cap);
  } else if (key == "prime") {
    const long p = parse_long(v);
    if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) parse_error("prime must be a prime");
    c.prime = static_cast<std::uint64_t>(p);
  } else if (key == "nu") {
    c.nu = static_cast<int>(parse_long(v));
    if (c.nu < 1) parse_error("nu must be at least 1");
  } else if (key == "out") c.out = v;
  else if (key == "jobs") {
    const long j = parse_long(v);
    if (j < 1) parse_error("jobs must be at least 1");
    c.jobs = static_cast<unsigned>(j);
  } else if (key == "B") c.B = parse_long(v);
  else if (key == "primitive") c.primitive = parse_bool(v);
  else if (key == "window") c.window = parse_rat(v);
  else if (key == "l_width") c.l_width = parse_rat(v);
  else if (key == "shortcut") c.shortcut = parse_bool(v);
  else if (key == "suite.rep_lattices_u") s.rep_lattices_u = parse_list(v);
  else if (key == "suite.rep_lattices_uu") s.rep_lattices_uu = parse_list(v);
  else if (key == "suite.rep_primes") {
    s.rep_primes.clear();
    for (const auto& p : parse_list(v)) s.rep_primes.push_back(static_cast<std::uint64_t>(parse_long(p)));
  } else if (key == "suite.rep_max_nu") s.rep_max_nu = static_cast<int>(parse_long(v));
  else if (key == "suite.growth_m_u2") s.growth_m_u2 = parse_long(v);
  else if (key == "suite.growth_m_e8") s.growth_m_e8 = parse_long(v);
  else if (key == "suite.growth_m_odd") s.growth_m_odd = parse_long(v);
  else if (key == "suite.growth_k2_exponent") s.growth_k2_exponent = parse_rat(v);
  else if (key == "suite.ratio_lattices") s.ratio_lattices = parse_list(v);
  else if (key == "suite.ratio_max_delta") s.ratio_max_delta = parse_long(v);
  else if (key == "suite.constant_width") s.constant_width = parse_rat(v);
  else parse_error("unknown config key '" + key + "'");
}

void write_config(std::ostream& os, const RunConfig& c) {
  const SuiteConfig& s = c.suite;
  std::vector<std::string> primes;
  for (auto p : s.rep_primes) primes.push_back(std::to_string(p));
  os << "lattice = " << c.lattice << "\n"
     << "weight = " << to_string(c.weight) << "\n"
     << "mmax = " << to_string(c.mmax) << "\n"
     << "basis = " << c.basis << "\n"
     << "mode = " << c.mode << "\n"
     << "cap = " << c.cap << "\n"
     << "prime = " << c.prime << "\n"
     << "nu = " << c.nu << "\n"
     << "out = " << c.out << "\n"
     << "jobs = " << c.jobs << "\n"
     << "B = " << c.B << "\n"
     << "primitive = " << bool_str(c.primitive) << "\n"
     << "window = " << to_string(c.window) << "\n"
     << "l_width = " << to_string(c.l_width) << "\n"
     << "shortcut = " << bool_str(c.shortcut) << "\n"
     << "suite.rep_lattices_u = " << join(s.rep_lattices_u, ",") << "\n"
     << "suite.rep_lattices_uu = " << join(s.rep_lattices_uu, ",") << "\n"
     << "suite.rep_primes = " << join(primes, ",") << "\n"
     << "suite.rep_max_nu = " << s.rep_max_nu << "\n"
     << "suite.growth_m_u2 = " << s.growth_m_u2 << "\n"
     << "suite.growth_m_e8 = " << s.growth_m_e8 << "\n"
     << "suite.growth_m_odd = " << s.growth_m_odd << "\n"
     << "suite.growth_k2_exponent = " << to_string(s.growth_k2_exponent) << "\n"
     << "suite.ratio_lattices = " << join(s.ratio_lattices, ",") << "\n"
     << "suite.ratio_max_delta = " << s.ratio_max_delta << "\n"
     << "suite.constant_width = " << to_string(s.constant_width) << "\n";
}

RunConfig read_config(std::istream& is, RunConfig base) {
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) parse_error("expected 'key = value', got '" + line + "'");
    set_config_key(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return base;
}

}  // namespace heegcone
