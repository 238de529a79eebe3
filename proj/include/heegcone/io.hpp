#pragma once

#include "heegcone/eisenstein.hpp"
#include "heegcone/estimates.hpp"
#include "heegcone/heegner.hpp"
#include "heegcone/lattice.hpp"
#include "heegcone/qseries.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace heegcone {

// Lattice file:
//   name: <text>
//   constructor: <named spec or empty>
//   declared_splits: <int>
//   blocks: <kind>@<offset>:<size> ...
//   gram:
//   <row of integers>
//   ...
void write_lattice(std::ostream& os, const EvenLattice& lattice);
EvenLattice read_lattice(std::istream& is);
/// A readable file path is loaded as a lattice file, anything else goes to build_named.
EvenLattice resolve_lattice(const std::string& source);

// Series file: header lines "lattice:", "weight:", "truncation:", then rows
//   <mu coords, comma separated, "-" for the trivial group> <exponent p/q> <coefficient p/q>
// Cusp-basis file: same header plus "size: n"; rows carry n coefficients and positive exponents only.
void write_series(std::ostream& os, const VectorQSeries& series);
VectorQSeries read_series(std::istream& is, const DiscGroup& group);
void write_cusp_basis(std::ostream& os, const CuspBasis& basis);
CuspBasis read_cusp_basis(std::istream& is, const DiscGroup& group);

std::string format_coords(const DiscElement& mu);
DiscElement parse_coords(const std::string& text, const DiscGroup& group);

/// Tab-separated table with a header line.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  friend bool operator==(const Table&, const Table&) = default;
};
void write_table(std::ostream& os, const Table& table);
Table read_table(std::istream& is);

/// Flags and config files share these keys ("key = value", '#' comments).
struct RunConfig {
  std::string lattice;
  Rational weight;
  Rational mmax{10};
  std::string basis;
  std::string mode{"exact"};
  std::uint64_t cap = default_enumeration_cap;
  std::uint64_t prime = 2;
  int nu = 1;
  std::string out;
  unsigned jobs = 1;
  long B = 0;  // 0: smallest admissible
  bool primitive = false;
  Rational window{2};
  Rational l_width = EisensteinOptions{}.l_width;
  bool shortcut = true;
  SuiteConfig suite;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};
void write_config(std::ostream& os, const RunConfig& config);
/// Applies the keys found in the stream on top of `base`; unknown keys are a parse error.
RunConfig read_config(std::istream& is, RunConfig base = {});
void set_config_key(RunConfig& config, const std::string& key, const std::string& value);

}  // namespace heegcone
