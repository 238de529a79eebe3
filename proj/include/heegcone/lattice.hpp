#pragma once

#include "heegcone/numeric.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace heegcone {

using IntMatrix = std::vector<std::vector<Integer>>;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Summand kinds recorded by construction; repnum picks counting paths from these.
enum class BlockKind { generic, hyperbolic, e8, rank1 };

std::string_view to_string(BlockKind kind);
BlockKind parse_block_kind(std::string_view text);

struct Block {
  std::size_t offset = 0;
  std::size_t size = 0;
  BlockKind kind = BlockKind::generic;
};

/// Even lattice Z^n with an integral Gram matrix. Immutable after construction.
class EvenLattice {
 public:
  /// Validates symmetry, evenness and non-degeneracy, and derives the signature.
  /// Without explicit blocks the whole Gram is one generic block.
  explicit EvenLattice(IntMatrix gram, std::string name = {}, int declared_splits = 0,
                       std::vector<Block> blocks = {}, std::string constructor = {});

  const IntMatrix& gram() const { return gram_; }
  std::size_t rank() const { return gram_.size(); }
  int sig_plus() const { return sig_plus_; }
  int sig_minus() const { return sig_minus_; }
  int declared_splits() const { return declared_splits_; }
  const std::string& name() const { return name_; }
  const std::string& constructor() const { return constructor_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const Integer& determinant() const { return det_; }
  bool is_unimodular() const { return abs(det_) == 1; }

  /// Q(x) = (x, x) / 2.
  Rational norm(const RatVector& x) const;
  Rational pairing(const RatVector& x, const RatVector& y) const;

  /// L with the Gram matrix negated (signature swapped).
  EvenLattice negated() const;

 private:
  IntMatrix gram_;
  std::string name_;
  std::string constructor_;
  int declared_splits_ = 0;
  std::vector<Block> blocks_;
  int sig_plus_ = 0;
  int sig_minus_ = 0;
  Integer det_;
};

Integer determinant(const IntMatrix& m);
/// Signature (positive, negative) by exact congruent diagonalization over Q.
std::pair<int, int> signature(const IntMatrix& gram);

EvenLattice hyperbolic_plane();
EvenLattice e8_lattice(bool negative = false);
/// <n>: the rank-one lattice with Gram (n); n must be even and nonzero.
EvenLattice rank1_lattice(const Integer& n);
/// <2d> + U^2 + E8^2, signature (19, 2).
EvenLattice k3_lattice(const Integer& d);
/// Norm form of the ideal with Z-basis rows (u_i, v_i) = u_i + v_i w, w = (D + sqrt D)/2,
/// scaled by 1/N(b), plus one hyperbolic plane.
EvenLattice hilbert_lattice(const Integer& D, const IntMatrix& ideal_basis);

EvenLattice direct_sum(const EvenLattice& a, const EvenLattice& b);

/// Named constructor expressions: terms joined by '+', each term one of
/// U, E8, E8(-1), rank1(n), K3(d), Hilbert(D) or Hilbert(D;u1,v1,u2,v2),
/// optionally raised to a power, e.g. "E8^4+U^2" or "rank1(2)+U^2".
EvenLattice build_named(std::string_view spec);

struct WeightCheck {
  Rational k;
  bool weil_congruence = false;
  bool cone_congruence = false;
  bool is_geometric_weight = false;
};

/// Rejects k < 2, k outside (1/2)Z, and 2k != b+ - b- (mod 4).
WeightCheck validate_weight(const EvenLattice& lattice, const Rational& k);

}  // namespace heegcone
