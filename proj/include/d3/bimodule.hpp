#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "d3/algebra.hpp"
#include "d3/linalg.hpp"

namespace d3 {

/// A finite-dimensional X-Y bimodule given by the action of every basis
/// element of X (m -> x m) and of Y (m -> m y).
class Bimodule {
public:
  /// Checks unitality, associativity of both actions and that they commute,
  /// on all basis triples.
  Bimodule(AlgebraPtr left, AlgebraPtr right, std::size_t dim, std::vector<LinMap> left_action,
           std::vector<LinMap> right_action);

  const AlgebraPtr &left() const { return left_; }
  const AlgebraPtr &right() const { return right_; }
  const Field &field() const { return left_->field(); }
  std::size_t dim() const { return dim_; }
  const LinMap &left_basis_action(std::size_t i) const { return left_action_[i]; }
  const LinMap &right_basis_action(std::size_t j) const { return right_action_[j]; }

  LinMap left_matrix(const SparseVec &x) const;
  LinMap right_matrix(const SparseVec &y) const;
  SparseVec act_left(const SparseVec &x, const SparseVec &m) const;
  SparseVec act_right(const SparseVec &m, const SparseVec &y) const;

  /// Greedy generating set as a bimodule, taken from the standard basis.
  const std::vector<SparseVec> &generators() const;

private:
  void verify() const;

  AlgebraPtr left_, right_;
  std::size_t dim_;
  std::vector<LinMap> left_action_, right_action_;
  mutable std::vector<SparseVec> generators_;
  mutable bool have_generators_ = false;
};

using BimodulePtr = std::shared_ptr<const Bimodule>;

/// Same algebras on both sides and identical action matrices.
bool same_bimodule(const Bimodule &m, const Bimodule &n);
bool same_acting_pair(const Bimodule &m, const Bimodule &n);

class BimoduleMap {
public:
  /// Throws NotBimoduleMap unless the matrix intertwines the actions of the
  /// algebra generators on both sides.
  BimoduleMap(BimodulePtr source, BimodulePtr target, LinMap matrix);

  const BimodulePtr &source() const { return source_; }
  const BimodulePtr &target() const { return target_; }
  const LinMap &matrix() const { return matrix_; }
  SparseVec apply(const SparseVec &m) const { return matrix_.apply(m); }

private:
  BimodulePtr source_, target_;
  LinMap matrix_;
};

BimoduleMap identity_map(const BimodulePtr &m);
/// f after g.
BimoduleMap compose_maps(const BimoduleMap &f, const BimoduleMap &g);
BimoduleMap operator+(const BimoduleMap &a, const BimoduleMap &b);
BimoduleMap scale(const BimoduleMap &f, const Scalar &s);

/// The algebra A with x.a.y = left_via(x) a right_via(y).
BimodulePtr restricted_bimodule(const AlgebraPtr &a, const AlgebraMap &left_via, const AlgebraMap &right_via);
/// The regular A-A bimodule.
BimodulePtr regular_bimodule(const AlgebraPtr &a);
/// Pulls both actions back along algebra maps into M's acting algebras.
BimodulePtr restrict_scalars(const Bimodule &m, const AlgebraMap &left_via, const AlgebraMap &right_via);

BimodulePtr direct_sum(const Bimodule &m, const Bimodule &n);

/// M (x)_B N as a quotient of M (x) N; coordinate (i, j) of M (x) N has index
/// i * dim N + j. The quotient basis is the set of non-pivot coordinates of
/// the reduced relation matrix, in increasing order.
struct TensorProduct {
  BimodulePtr module;
  std::size_t dim_left = 0, dim_right = 0;
  LinMap projection; ///< M (x) N -> quotient
  LinMap section;    ///< quotient -> M (x) N, basis vector to its coordinate

  /// Class of m (x) n.
  SparseVec pure(const SparseVec &m, const SparseVec &n) const;
  /// Class of an element of M (x) N.
  SparseVec project(const SparseVec &mn) const { return projection.apply(mn); }
  /// Representative in M (x) N.
  SparseVec expand(const SparseVec &q) const { return section.apply(q); }
};

TensorProduct tensor_over(const Bimodule &m, const Bimodule &n);

/// m (x) n in the unbalanced product, coordinate i * dim_n + j.
SparseVec outer(const SparseVec &m, const SparseVec &n, std::size_t dim_n);

/// { m : z.m = m.z for all z }, where z acts on the left through `left_via`
/// and on the right through `right_via`.
Subspace centralizer_submodule(const Bimodule &m, const AlgebraMap &left_via, const AlgebraMap &right_via);
Subspace centralizer_submodule(const Bimodule &m, const AlgebraMap &via);

struct HomSpace {
  BimodulePtr source, target;
  std::vector<BimoduleMap> basis;
  Subspace flat; ///< span of the flattened basis matrices

  std::size_t dim() const { return basis.size(); }
  std::optional<SparseVec> coordinates(const LinMap &f) const { return flat.coordinates(f.flatten()); }
};

HomSpace hom_space(const BimodulePtr &m, const BimodulePtr &n);

struct SummandWitness {
  std::size_t N = 0;
  std::vector<BimoduleMap> f; ///< N -> M
  std::vector<BimoduleMap> g; ///< M -> N
};

struct SummandResult {
  bool is_summand = false;
  std::optional<SummandWitness> witness;
  /// dim End(M) minus the dimension of the trace ideal spanned by the f o g;
  /// zero exactly when the test succeeds (only computed on failure).
  std::size_t defect = 0;
  std::size_t trace_rank = 0;
};

/// Decides whether M is a direct summand of N^k for some k by testing
/// id_M in span{ f o g : g in Hom(M, N), f in Hom(N, M) }.
SummandResult is_direct_summand_of_power(const BimodulePtr &m, const BimodulePtr &n);

/// Throws VerificationFailed unless sum f_i o g_i is the identity of M.
void verify_witness(const SummandWitness &w, const Bimodule &m);

bool h_equivalent(const BimodulePtr &m, const BimodulePtr &n);

} // namespace d3
