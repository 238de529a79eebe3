#include "heegcone/lattice.hpp"

#include "heegcone/error.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <tuple>

namespace heegcone {

std::string_view to_string(BlockKind kind) {
  switch (kind) {
    case BlockKind::generic: return "generic";
    case BlockKind::hyperbolic: return "U";
    case BlockKind::e8: return "E8";
    case BlockKind::rank1: return "rank1";
  }
  return "generic";
}

BlockKind parse_block_kind(std::string_view text) {
  if (text == "generic") return BlockKind::generic;
  if (text == "U") return BlockKind::hyperbolic;
  if (text == "E8") return BlockKind::e8;
  if (text == "rank1") return BlockKind::rank1;
  throw Error(ErrorCode::parse, "unknown block kind '" + std::string(text) + "'");
}

Integer determinant(const IntMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  IntMatrix a = m;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]);
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

std::pair<int, int> signature(const IntMatrix& gram) {
  const std::size_t n = gram.size();
  std::vector<RatVector> a(n, RatVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = gram[i][j];
  auto swap_both = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    for (auto& row : a) std::swap(row[i], row[j]);
  };
  int plus = 0, minus = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i][i] == 0) {
      std::size_t j = i + 1;
      while (j < n && a[j][j] == 0) ++j;
      if (j < n) {
        swap_both(i, j);
      } else {
        j = i + 1;
        while (j < n && a[i][j] == 0) ++j;
        if (j == n) continue;  // zero row: null direction
        for (std::size_t c = 0; c < n; ++c) a[i][c] += a[j][c];
        for (std::size_t r = 0; r < n; ++r) a[r][i] += a[r][j];
      }
    }
    const Rational pivot = a[i][i];
    if (pivot > 0) ++plus; else ++minus;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (a[j][i] == 0) continue;
      const Rational f = a[j][i] / pivot;
      for (std::size_t c = i; c < n; ++c) a[j][c] -= f * a[i][c];
      for (std::size_t r = i; r < n; ++r) a[r][j] -= f * a[r][i];
    }
  }
  return {plus, minus};
}

EvenLattice::EvenLattice(IntMatrix gram, std::string name, int declared_splits,
                         std::vector<Block> blocks, std::string constructor)
    : gram_(std::move(gram)),
      name_(std::move(name)),
      constructor_(std::move(constructor)),
      declared_splits_(declared_splits),
      blocks_(std::move(blocks)) {
  const std::size_t n = gram_.size();
  for (std::size_t i = 0; i < n; ++i) {
    HEEGCONE_REQUIRE(gram_[i].size() == n, ErrorCode::invalid_argument, "gram matrix is not square");
    HEEGCONE_REQUIRE(mpz_even_p(gram_[i][i].get_mpz_t()), ErrorCode::invalid_argument,
                     "gram matrix has an odd diagonal entry");
    for (std::size_t j = 0; j < i; ++j)
      HEEGCONE_REQUIRE(gram_[i][j] == gram_[j][i], ErrorCode::invalid_argument, "gram matrix is not symmetric");
  }
  det_ = heegcone::determinant(gram_);
  HEEGCONE_REQUIRE(det_ != 0, ErrorCode::degenerate_lattice, "gram matrix is degenerate");
  std::tie(sig_plus_, sig_minus_) = signature(gram_);
  HEEGCONE_REQUIRE(declared_splits_ >= 0 && declared_splits_ <= std::min(sig_plus_, sig_minus_),
                   ErrorCode::invalid_argument, "declared_splits exceeds min(b+, b-)");
  if (blocks_.empty()) {
    if (n > 0) blocks_.push_back({0, n, BlockKind::generic});
  } else {
    std::size_t next = 0;
    for (const Block& b : blocks_) {
      HEEGCONE_REQUIRE(b.offset == next && b.size > 0, ErrorCode::invalid_argument, "blocks do not tile the gram matrix");
      next += b.size;
    }
    HEEGCONE_REQUIRE(next == n, ErrorCode::invalid_argument, "blocks do not tile the gram matrix");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        auto in_block = [&](const Block& b) {
          return i >= b.offset && i < b.offset + b.size && j >= b.offset && j < b.offset + b.size;
        };
        if (std::none_of(blocks_.begin(), blocks_.end(), in_block))
          HEEGCONE_REQUIRE(gram_[i][j] == 0, ErrorCode::invalid_argument, "gram is not block diagonal");
      }
    for (const Block& b : blocks_) {
      if (b.kind == BlockKind::hyperbolic)
        HEEGCONE_REQUIRE(b.size == 2 && gram_[b.offset][b.offset] == 0 && gram_[b.offset + 1][b.offset + 1] == 0 &&
                             abs(gram_[b.offset][b.offset + 1]) == 1,
                         ErrorCode::invalid_argument, "block tagged U is not a hyperbolic plane");
      if (b.kind == BlockKind::rank1)
        HEEGCONE_REQUIRE(b.size == 1, ErrorCode::invalid_argument, "block tagged rank1 has size != 1");
      if (b.kind == BlockKind::e8) HEEGCONE_REQUIRE(b.size == 8, ErrorCode::invalid_argument, "block tagged E8 has size != 8");
    }
  }
}

Rational EvenLattice::pairing(const RatVector& x, const RatVector& y) const {
  Rational s = 0;
  const std::size_t n = rank();
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (gram_[i][j] != 0 && y[j] != 0) row += gram_[i][j] * y[j];
    s += x[i] * row;
  }
  return s;
}

Rational EvenLattice::norm(const RatVector& x) const { return pairing(x, x) / 2; }

EvenLattice EvenLattice::negated() const {
  IntMatrix g = gram_;
  for (auto& row : g)
    for (auto& v : row) v = -v;
  std::string ctor = constructor_.empty() ? std::string{} : "-(" + constructor_ + ")";
  return EvenLattice(std::move(g), name_.empty() ? std::string{} : name_ + "^-", declared_splits_, blocks_, ctor);
}

EvenLattice hyperbolic_plane() {
  return EvenLattice({{0, 1}, {1, 0}}, "U", 1, {{0, 2, BlockKind::hyperbolic}}, "U");
}

EvenLattice e8_lattice(bool negative) {
  // Cartan matrix of E8 (Bourbaki labelling, node 2 attached to node 4).
  IntMatrix g(8, IntVector(8, 0));
  for (int i = 0; i < 8; ++i) g[i][i] = 2;
  const int edges[7][2] = {{0, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}};
  for (auto& e : edges) g[e[0]][e[1]] = g[e[1]][e[0]] = -1;
  if (negative)
    for (auto& row : g)
      for (auto& v : row) v = -v;
  const std::string ctor = negative ? "E8(-1)" : "E8";
  return EvenLattice(std::move(g), ctor, 0, {{0, 8, BlockKind::e8}}, ctor);
}

EvenLattice rank1_lattice(const Integer& n) {
  HEEGCONE_REQUIRE(n != 0 && mpz_even_p(n.get_mpz_t()), ErrorCode::invalid_argument, "rank1 needs a nonzero even entry");
  const std::string ctor = "rank1(" + n.get_str() + ")";
  return EvenLattice({{n}}, ctor, 0, {{0, 1, BlockKind::rank1}}, ctor);
}

EvenLattice k3_lattice(const Integer& d) {
  HEEGCONE_REQUIRE(d >= 1, ErrorCode::invalid_argument, "K3 needs d >= 1");
  EvenLattice l = rank1_lattice(2 * d);
  l = direct_sum(l, hyperbolic_plane());
  l = direct_sum(l, hyperbolic_plane());
  l = direct_sum(l, e8_lattice());
  l = direct_sum(l, e8_lattice());
  const std::string ctor = "K3(" + d.get_str() + ")";
  return EvenLattice(l.gram(), ctor, 2, l.blocks(), ctor);
}

EvenLattice hilbert_lattice(const Integer& D, const IntMatrix& basis) {
  HEEGCONE_REQUIRE(D > 0, ErrorCode::invalid_argument, "field discriminant must be positive");
  HEEGCONE_REQUIRE(!mpz_perfect_square_p(D.get_mpz_t()), ErrorCode::invalid_argument, "field discriminant is a square");
  const Integer r4 = mod(D, Integer(4));
  HEEGCONE_REQUIRE(r4 == 0 || r4 == 1, ErrorCode::invalid_argument, "field discriminant must be 0 or 1 mod 4");
  HEEGCONE_REQUIRE(basis.size() == 2 && basis[0].size() == 2 && basis[1].size() == 2, ErrorCode::invalid_argument,
                   "ideal basis must be 2x2");
  const Integer nb = abs(determinant(basis));
  HEEGCONE_REQUIRE(nb != 0, ErrorCode::invalid_argument, "singular ideal basis");
  const Integer norm_w = (D * D - D) / 4;
  // Closure under multiplication by w: w(u + v w) = -v N(w) + (u + v D) w.
  const Integer& a = basis[0][0];
  const Integer& b = basis[0][1];
  const Integer& c = basis[1][0];
  const Integer& e = basis[1][1];
  const Integer det = a * e - b * c;
  for (const auto& row : basis) {
    const Integer x = -row[1] * norm_w, y = row[0] + row[1] * D;
    // Solve (s, t) * basis = (x, y).
    const Integer s = x * e - y * c, t = y * a - x * b;
    HEEGCONE_REQUIRE(mpz_divisible_p(s.get_mpz_t(), det.get_mpz_t()) && mpz_divisible_p(t.get_mpz_t(), det.get_mpz_t()),
                     ErrorCode::invalid_argument, "basis does not span an ideal");
  }
  IntMatrix g(2, IntVector(2));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const Integer trace = 2 * basis[i][0] * basis[j][0] + (basis[i][0] * basis[j][1] + basis[i][1] * basis[j][0]) * D +
                            2 * basis[i][1] * basis[j][1] * norm_w;
      HEEGCONE_REQUIRE(mpz_divisible_p(trace.get_mpz_t(), nb.get_mpz_t()), ErrorCode::invalid_argument,
                       "norm form is not integral on the ideal");
      g[i][j] = trace / nb;
    }
  const std::string ctor = "Hilbert(" + D.get_str() + ";" + a.get_str() + "," + b.get_str() + "," + c.get_str() + "," +
                           e.get_str() + ")";
  EvenLattice block(g, ctor, 0, {{0, 2, BlockKind::generic}}, ctor);
  EvenLattice l = direct_sum(block, hyperbolic_plane());
  return EvenLattice(l.gram(), ctor, 1, l.blocks(), ctor);
}

EvenLattice direct_sum(const EvenLattice& a, const EvenLattice& b) {
  const std::size_t n = a.rank(), m = b.rank();
  IntMatrix g(n + m, IntVector(n + m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i][j] = a.gram()[i][j];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g[n + i][n + j] = b.gram()[i][j];
  std::vector<Block> blocks = a.blocks();
  for (Block blk : b.blocks()) {
    blk.offset += n;
    blocks.push_back(blk);
  }
  std::string ctor;
  if (!a.constructor().empty() && !b.constructor().empty()) ctor = a.constructor() + "+" + b.constructor();
  std::string name;
  if (!a.name().empty() && !b.name().empty()) name = a.name() + "+" + b.name();
  return EvenLattice(std::move(g), name, a.declared_splits() + b.declared_splits(), std::move(blocks), ctor);
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

Integer parse_int(const std::string& s) {
  Rational q = parse_rational(s);
  HEEGCONE_REQUIRE(q.get_den() == 1, ErrorCode::parse, "expected an integer, got '" + s + "'");
  return q.get_num();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

EvenLattice build_term(const std::string& term) {
  std::string head = term, args;
  if (auto open = term.find('('); open != std::string::npos) {
    HEEGCONE_REQUIRE(term.back() == ')', ErrorCode::parse, "unbalanced parenthesis in '" + term + "'");
    head = trim(term.substr(0, open));
    args = trim(term.substr(open + 1, term.size() - open - 2));
  }
  if (head == "U" && args.empty()) return hyperbolic_plane();
  if (head == "E8") {
    if (args.empty()) return e8_lattice(false);
    HEEGCONE_REQUIRE(args == "-1", ErrorCode::parse, "E8 accepts only the argument -1");
    return e8_lattice(true);
  }
  if (head == "rank1") return rank1_lattice(parse_int(args));
  if (head == "K3") return k3_lattice(parse_int(args));
  if (head == "Hilbert") {
    auto parts = split(args, ';');
    const Integer D = parse_int(parts[0]);
    IntMatrix basis{{1, 0}, {0, 1}};
    if (parts.size() == 2) {
      auto nums = split(parts[1], ',');
      HEEGCONE_REQUIRE(nums.size() == 4, ErrorCode::parse, "Hilbert basis needs four integers");
      basis = {{parse_int(nums[0]), parse_int(nums[1])}, {parse_int(nums[2]), parse_int(nums[3])}};
    } else {
      HEEGCONE_REQUIRE(parts.size() == 1, ErrorCode::parse, "malformed Hilbert arguments");
    }
    return hilbert_lattice(D, basis);
  }
  throw Error(ErrorCode::parse, "unknown lattice constructor '" + term + "'");
}

}  // namespace

EvenLattice build_named(std::string_view spec) {
  const std::string text = trim(spec);
  HEEGCONE_REQUIRE(!text.empty(), ErrorCode::parse, "empty lattice specification");
  std::optional<EvenLattice> out;
  for (const std::string& raw : split(text, '+')) {
    HEEGCONE_REQUIRE(!raw.empty(), ErrorCode::parse, "empty term in '" + text + "'");
    std::string term = raw;
    long power = 1;
    if (auto caret = raw.rfind('^'); caret != std::string::npos && raw.find(')', caret) == std::string::npos) {
      term = trim(raw.substr(0, caret));
      power = parse_int(trim(raw.substr(caret + 1))).get_si();
      HEEGCONE_REQUIRE(power >= 1, ErrorCode::parse, "powers must be positive");
    }
    const EvenLattice piece = build_term(term);
    for (long i = 0; i < power; ++i) out = out ? direct_sum(*out, piece) : piece;
  }
  return EvenLattice(out->gram(), text, out->declared_splits(), out->blocks(), text);
}

WeightCheck validate_weight(const EvenLattice& lattice, const Rational& k) {
  const Rational twice = 2 * k;
  HEEGCONE_REQUIRE(is_integer(twice), ErrorCode::invalid_argument, "weight must lie in (1/2)Z");
  HEEGCONE_REQUIRE(k >= 2, ErrorCode::invalid_argument, "weight must be at least 2");
  const Integer two_k = twice.get_num();
  const Integer diff = two_k - lattice.sig_plus() + lattice.sig_minus();
  WeightCheck out;
  out.k = k;
  out.weil_congruence = mod(diff, Integer(4)) == 0;
  HEEGCONE_REQUIRE(out.weil_congruence, ErrorCode::invalid_argument, "weight violates 2k = b+ - b- (mod 4)");
  out.cone_congruence = mod(diff, Integer(8)) == 4;
  out.is_geometric_weight = two_k == Integer(static_cast<unsigned long>(lattice.rank()));
  return out;
}

}  // namespace heegcone
