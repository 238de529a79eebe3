#include "heegcone/heegner.hpp"

#include "heegcone/arith.hpp"
#include "heegcone/eisenstein.hpp"
#include "heegcone/error.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace heegcone {

HeegnerIndex make_index(const DiscGroup& group, const Rational& m, const DiscElement& mu) {
  group.check(mu);
  HEEGCONE_REQUIRE(m > 0, ErrorCode::invalid_index, "Heegner index needs m > 0");
  HEEGCONE_REQUIRE(is_integer(m - group.q_value(mu)), ErrorCode::invalid_index,
                   "m = " + to_string(m) + " is not in Q(mu) + Z for mu = " + group.format(mu));
  return {m, mu};
}

std::string format_index(const DiscGroup& group, const HeegnerIndex& index) {
  return "(" + to_string(index.m) + ", " + group.format(index.mu) + ")";
}

Integer FormalDivisor::coefficient(const HeegnerIndex& index) const {
  auto it = terms_.find(index);
  return it == terms_.end() ? Integer(0) : it->second;
}

void FormalDivisor::add(const HeegnerIndex& index, const Integer& coeff) {
  if (coeff == 0) return;
  Integer& c = terms_[index];
  c += coeff;
  if (c == 0) terms_.erase(index);
}

FormalDivisor& FormalDivisor::operator+=(const FormalDivisor& other) {
  HEEGCONE_REQUIRE(basis_ == other.basis_, ErrorCode::invalid_argument, "adding divisors in different bases");
  for (const auto& [idx, c] : other.terms_) add(idx, c);
  return *this;
}

std::string FormalDivisor::str(const DiscGroup& group) const {
  const char* letter = basis_ == DivisorBasis::H ? "H" : "P";
  std::string s;
  for (const auto& [idx, c] : terms_) {
    if (!s.empty()) s += c > 0 ? " + " : " - ";
    else if (c < 0) s += "-";
    Integer a = abs(c);
    if (a != 1) s += a.get_str() + "*";
    s += letter + format_index(group, idx);
  }
  return s.empty() ? "0" : s;
}

std::vector<std::pair<std::int64_t, DiscElement>> square_divisors(const DiscGroup& group, const HeegnerIndex& index) {
  make_index(group, index.m, index.mu);
  const Rational nm = index.m * group.level();
  HEEGCONE_REQUIRE(is_integer(nm), ErrorCode::invalid_index, "N m is not integral");
  const Integer bound = nm.get_num();
  std::vector<std::pair<std::int64_t, DiscElement>> out;
  for (std::int64_t r = 1; Integer(r) * r <= bound; ++r) {
    if (bound % (Integer(r) * r) != 0) continue;
    const Rational reduced = index.m / Rational(r * r);
    for (const DiscElement& sigma : group.solve_multiple(r, index.mu))
      if (is_integer(reduced - group.q_value(sigma))) out.emplace_back(r, sigma);
  }
  return out;
}

FormalDivisor expand_P_in_H(const DiscGroup& group, const HeegnerIndex& index) {
  FormalDivisor out(DivisorBasis::H);
  for (const auto& [r, sigma] : square_divisors(group, index)) {
    const int mob = moebius(static_cast<std::uint64_t>(r));
    if (mob != 0) out.add({index.m / Rational(r * r), sigma}, mob);
  }
  return out;
}

FormalDivisor expand_H_in_P(const DiscGroup& group, const HeegnerIndex& index) {
  FormalDivisor out(DivisorBasis::P);
  for (const auto& [r, delta] : square_divisors(group, index)) out.add({index.m / Rational(r * r), delta}, 1);
  return out;
}

FormalDivisor to_H_basis(const DiscGroup& group, const FormalDivisor& divisor) {
  if (divisor.basis() == DivisorBasis::H) return divisor;
  FormalDivisor out(DivisorBasis::H);
  for (const auto& [idx, c] : divisor.terms()) {
    const FormalDivisor e = expand_P_in_H(group, idx);
    for (const auto& [term, d] : e.terms()) out.add(term, c * d);
  }
  return out;
}

FormalDivisor to_P_basis(const DiscGroup& group, const FormalDivisor& divisor) {
  if (divisor.basis() == DivisorBasis::P) return divisor;
  FormalDivisor out(DivisorBasis::P);
  for (const auto& [idx, c] : divisor.terms()) {
    const FormalDivisor e = expand_H_in_P(group, idx);
    for (const auto& [term, d] : e.terms()) out.add(term, c * d);
  }
  return out;
}

int multiplicity(const DiscGroup& group, const DiscElement& delta) {
  return group.is_zero(group.scale(2, delta)) ? 2 : 1;
}

namespace {

const DiscGroup& k3_group(long d) {
  static std::mutex mutex;
  static std::map<long, std::unique_ptr<DiscGroup>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[d];
  if (!slot) slot = std::make_unique<DiscGroup>(k3_lattice(d));
  return *slot;
}

DiscElement k3_element(long d, long a) {
  RatVector x(21, Rational(0));
  x[0] = ratio(a, 2 * d);
  x[0].canonicalize();
  return k3_group(d).from_vector(x);
}

}  // namespace

HeegnerIndex k3_index_convert(long d, long h, long a) {
  HEEGCONE_REQUIRE(d >= 1, ErrorCode::invalid_argument, "K3 needs d >= 1");
  HEEGCONE_REQUIRE(a >= 0 && a < 2 * d, ErrorCode::invalid_argument, "need 0 <= a < 2d");
  Rational m = ratio(a * a, 4 * d) - (h - 1);
  m.canonicalize();
  HEEGCONE_REQUIRE(m > 0, ErrorCode::non_positive_index,
                   "m = " + to_string(m) + " <= 0 for (h, a) = (" + std::to_string(h) + ", " + std::to_string(a) + ")");
  return make_index(k3_group(d), m, k3_element(d, a));
}

NLIndex k3_index_inverse(long d, const HeegnerIndex& index) {
  HEEGCONE_REQUIRE(d >= 1, ErrorCode::invalid_argument, "K3 needs d >= 1");
  const DiscGroup& g = k3_group(d);
  make_index(g, index.m, index.mu);
  for (long a = 0; a < 2 * d; ++a) {
    if (k3_element(d, a) != index.mu) continue;
    Rational h = ratio(a * a, 4 * d) - index.m + 1;
    h.canonicalize();
    HEEGCONE_REQUIRE(is_integer(h), ErrorCode::invalid_index, "index does not come from an integral h");
    return {h.get_num().get_si(), a};
  }
  throw Error(ErrorCode::invalid_index, "element is not a multiple of the <2d> generator");
}

DivisorClass divisor_class(const EisensteinSeries& eis, const FormalDivisor& divisor, const CuspBasis& basis) {
  const DiscGroup& group = eis.group();
  for (const auto& f : basis.forms)
    HEEGCONE_REQUIRE(f.orders() == group.orders(), ErrorCode::invalid_argument,
                     "cusp basis grading does not match the lattice");
  const FormalDivisor h = to_H_basis(group, divisor);
  DivisorClass out;
  out.s.assign(basis.size(), Rational(0));
  Interval acc(Rational(0));
  Rational exact_sum = 0;
  for (const auto& [idx, c] : h.terms()) {
    const Coefficient e = eis.coefficient(idx.m, idx.mu);
    if (e.exact) exact_sum -= Rational(c) * e.value;
    else {
      out.gamma_exact = false;
      acc -= Interval(Rational(c)) * e.enclosure;
    }
    for (std::size_t j = 0; j < basis.size(); ++j) out.s[j] += Rational(c) * basis.forms[j].coefficient(idx.mu, idx.m);
  }
  if (out.gamma_exact) {
    out.gamma = exact_sum;
    out.gamma_enclosure = Interval(exact_sum);
    HEEGCONE_REQUIRE(out.gamma > 0, ErrorCode::check_failed,
                     "gamma = " + to_string(out.gamma) + " <= 0 for " + divisor.str(group));
  } else {
    out.gamma_enclosure = acc + Interval(exact_sum);
    HEEGCONE_REQUIRE(out.gamma_enclosure.positive(), ErrorCode::check_failed,
                     "gamma enclosure " + out.gamma_enclosure.str() + " is not positive for " + divisor.str(group));
    out.gamma = out.gamma_enclosure.midpoint();
  }
  return out;
}

DivisorClass divisor_class(const EisensteinSeries& eis, const HeegnerIndex& index, const CuspBasis& basis) {
  FormalDivisor d(DivisorBasis::H);
  d.add(index, 1);
  return divisor_class(eis, d, basis);
}

DivisorClass hodge_class(std::size_t basis_size) {
  DivisorClass out;
  out.gamma = 1;
  out.gamma_enclosure = Interval(Rational(1));
  out.s.assign(basis_size, Rational(0));
  return out;
}

}  // namespace heegcone
