#pragma once

#include "heegcone/eisenstein.hpp"
#include "heegcone/heegner.hpp"
#include "heegcone/repnum.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace heegcone {

struct ScanRow {
  std::string point;
  std::string value;
  std::string bound;
  bool pass = true;
};

/// Finite verification of one inequality over a grid.
struct ScanReport {
  std::string name;
  std::vector<ScanRow> rows;
  /// Smallest slack (or empirical constant), exact or as an enclosure.
  std::string margin;

  bool passed() const;
  std::size_t failures() const;
  std::string summary() const;
};

enum class SplitKind { U, UU };
std::string to_string(SplitKind kind);

struct RepGridPoint {
  std::uint64_t p = 2;
  int nu = 1;
  Rational m;
  DiscElement mu;
};
/// Every mu and every class of m mod p^nu, for the given primes and 1 <= nu <= max_nu.
std::vector<RepGridPoint> full_rep_grid(const EvenLattice& lattice, const std::vector<std::uint64_t>& primes, int max_nu);

/// 1 - 1/p <= p^{(1-rank) nu} N <= nu + 1 (U split); 1 - p^-2 <= ... <= 1 + 1/p (U+U split).
ScanReport check_rep_bounds(const EvenLattice& lattice, SplitKind split, const std::vector<RepGridPoint>& grid,
                            const RepOptions& options = {});

/// min over 0 < m <= M of -e(m, mu) / m^exponent; exponent defaults to k - 1.
/// Fails on any coefficient that is not strictly negative.
ScanReport eis_growth_scan(const EisensteinSeries& eis, const Rational& max_m,
                           std::optional<Rational> exponent = std::nullopt, unsigned jobs = 1);

struct EpsRatioPoint {
  HeegnerIndex index;  // (Delta, delta)
  std::int64_t r = 1;
  DiscElement mu;  // r mu = delta
};
std::vector<EpsRatioPoint> epsilon_ratio_grid(const DiscGroup& group, const Rational& max_delta);
/// eps_{Delta/r^2, mu} / eps_{Delta, delta} <= prod_{p | r} 1/(1 - 1/p).
ScanReport epsilon_ratio_check(const EisensteinSeries& eis, const std::vector<EpsRatioPoint>& grid);

struct QRatio {
  Rational q;
  Rational eps;
  Rational value;  // q / eps
};
/// Q(Delta, delta) = sum_r moebius(r) sum_{r mu = delta} r^{-2(k-1)} eps_{Delta/r^2, mu}.
QRatio q_ratio(const EisensteinSeries& eis, const HeegnerIndex& index);
/// q_ratio >= upper end of the certified cone_bound enclosure on all indices with Delta <= max_delta.
ScanReport q_ratio_scan(const EisensteinSeries& eis, const Rational& max_delta);

/// Grids for the default verification suite; all keys are overridable from a config file.
struct SuiteConfig {
  std::vector<std::string> rep_lattices_u{"U", "rank1(2)+U", "rank1(4)+U"};
  std::vector<std::string> rep_lattices_uu{"U^2", "rank1(2)+U^2", "rank1(4)+U^2", "E8+U^2", "K3(1)"};
  std::vector<std::uint64_t> rep_primes{2, 3, 5};
  int rep_max_nu = 3;
  long growth_m_u2 = 50;
  long growth_m_e8 = 10;
  long growth_m_odd = 200;
  Rational growth_k2_exponent{9, 10};
  std::vector<std::string> ratio_lattices{"rank1(2)+U^2", "rank1(4)+U^2", "rank1(6)+U^2", "rank1(2)+rank1(2)+U^2",
                                          "K3(1)"};
  long ratio_max_delta = 30;
  Rational constant_width{1, 1000000};
  unsigned jobs = 1;

  friend bool operator==(const SuiteConfig&, const SuiteConfig&) = default;
};

using Progress = std::function<void(const std::string&)>;
std::vector<ScanReport> run_suite(const SuiteConfig& config, const Progress& progress = {});

}  // namespace heegcone
