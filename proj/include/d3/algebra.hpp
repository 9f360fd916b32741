#pragma once

#include <memory>
#include <string>
#include <vector>

#include "d3/groups.hpp"
#include "d3/linalg.hpp"
#include "d3/scalar.hpp"

namespace d3 {

/// A finite-dimensional unital associative algebra given by structure
/// constants on a labelled basis. Associativity and unitality are checked
/// exhaustively on construction.
class Algebra {
public:
  /// `table[i * dim + j]` is the product of basis elements i and j.
  Algebra(Field field, std::vector<std::string> labels, std::vector<SparseVec> table, SparseVec unit);

  const Field &field() const { return field_; }
  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string> &labels() const { return labels_; }
  const SparseVec &unit() const { return unit_; }
  const SparseVec &basis_product(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
  SparseVec basis(std::size_t i) const { return SparseVec::unit(static_cast<Index>(i), field_.one()); }

  SparseVec multiply(const SparseVec &x, const SparseVec &y) const;
  /// Matrix of a -> x a.
  LinMap left_mult(const SparseVec &x) const;
  /// Matrix of a -> a x.
  LinMap right_mult(const SparseVec &x) const;

  /// A set of elements generating the algebra (basis vectors, chosen greedily
  /// in basis order unless supplied, e.g. group generators).
  const std::vector<SparseVec> &generators() const { return generators_; }
  void set_generators(std::vector<SparseVec> gens) { generators_ = std::move(gens); }

  /// Throws Error(VerificationFailed) when a basis triple is not associative
  /// or the unit is not two-sided.
  void verify() const;

  /// Same basis, reversed multiplication.
  Algebra opposite() const;

  /// Determinant-free test of nondegeneracy of the trace form
  /// (x, y) -> tr(left multiplication by xy). Nondegenerate implies semisimple.
  bool trace_form_nondegenerate(bool use_right_multiplication = false) const;

private:
  std::vector<SparseVec> greedy_generators() const;

  Field field_;
  std::vector<std::string> labels_;
  std::vector<SparseVec> table_;
  SparseVec unit_;
  std::vector<SparseVec> generators_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Equal as algebras on the nose: same field, dimension and structure constants.
bool same_algebra(const Algebra &a, const Algebra &b);

/// A unital algebra homomorphism, checked on every pair of basis elements.
class AlgebraMap {
public:
  AlgebraMap(AlgebraPtr source, AlgebraPtr target, LinMap matrix);

  const AlgebraPtr &source() const { return source_; }
  const AlgebraPtr &target() const { return target_; }
  const LinMap &matrix() const { return matrix_; }
  SparseVec apply(const SparseVec &x) const { return matrix_.apply(x); }

  static AlgebraMap identity(const AlgebraPtr &a);

private:
  AlgebraPtr source_, target_;
  LinMap matrix_;
};

AlgebraMap compose(const AlgebraMap &outer, const AlgebraMap &inner);

/// A || B || C: maps C -> B -> A.
struct AlgebraTower {
  AlgebraPtr A, B, C;
  std::shared_ptr<const AlgebraMap> iota_BA, iota_CB, iota_CA;

  static AlgebraTower make(AlgebraPtr a, AlgebraPtr b, AlgebraPtr c, AlgebraMap ba, AlgebraMap cb);
  /// A || B || B with the identity on B.
  static AlgebraTower degenerate(AlgebraPtr a, AlgebraPtr b, AlgebraMap ba);
  /// True when C -> B is the identity of one algebra.
  bool is_degenerate() const;
  /// A^op || B^op || C^op.
  AlgebraTower opposite() const;
};

/// F[G] with basis the canonically ordered group elements.
AlgebraPtr group_algebra(const PermGroup &g, const Field &f);

/// Basis inclusion F[sub] -> F[sup].
AlgebraMap subalgebra_inclusion(const PermGroup &sub, const PermGroup &sup, const AlgebraPtr &fsub,
                                const AlgebraPtr &fsup);
AlgebraMap subalgebra_inclusion(const PermGroup &sub, const PermGroup &sup, const Field &f);

AlgebraTower tower_from_groups(const GroupTower &t, const Field &f);

} // namespace d3
