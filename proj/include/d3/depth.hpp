#pragma once

#include <optional>
#include <vector>

#include "d3/bimodule.hpp"

namespace d3 {

/// The bimodules every depth computation on a tower A | B | C starts from.
struct TowerModules {
  AlgebraTower tower;
  TensorProduct aa;       ///< A (x)_B A as an A-A bimodule
  BimodulePtr a_ac, aa_ac; ///< A and A (x)_B A as A-C bimodules
  BimodulePtr a_ca, aa_ca; ///< ... as C-A bimodules
  BimodulePtr a_bc, a_cb;  ///< _B A_C and _C A_B

  /// Class of x (x)_B y.
  SparseVec tensor(const SparseVec &x, const SparseVec &y) const { return aa.pure(x, y); }
};

TowerModules tower_modules(const AlgebraTower &t);

enum class Side { Right, Left };
enum class Condition { RD2, LD2, RD3, LD3, D3 };
const char *to_string(Condition c);

/// Right: x (x) y = sum_i x gamma_i(y) u_i with gamma_i in End(_B A_C).
/// Left:  x (x) y = sum_j t_j beta_j(x) y with beta_j in End(_C A_B).
/// `maps` holds gamma_i / beta_j as matrices on A, `elements` holds u_i / t_j
/// in the quotient coordinates of A (x)_B A.
struct QuasiBasis {
  Side side = Side::Right;
  std::vector<LinMap> maps;
  std::vector<SparseVec> elements;
  std::size_t size() const { return maps.size(); }
};

/// Exhaustive check of the defining identity on all basis pairs, of the
/// intertwining of each map and of centralizer membership of each element.
bool check_quasibasis(const TowerModules &m, const QuasiBasis &qb);

struct DepthCertificate {
  Condition condition = Condition::RD3;
  bool verdict = false;
  std::optional<SummandWitness> witness;
  std::optional<QuasiBasis> quasibasis;
  std::size_t defect = 0;
  std::size_t trace_rank = 0;
};

DepthCertificate is_rD3(const TowerModules &m);
DepthCertificate is_lD3(const TowerModules &m);
DepthCertificate is_rD3(const AlgebraTower &t);
DepthCertificate is_lD3(const AlgebraTower &t);
/// Throw TowerNotDegenerate unless C -> B is the identity.
DepthCertificate is_rD2(const AlgebraTower &t);
DepthCertificate is_lD2(const AlgebraTower &t);

/// u_i = f_i(1), gamma_i(y) = g_i(1 (x) y). Throws VerificationFailed if the
/// result does not satisfy the quasibasis identity.
QuasiBasis extract_rd3_quasibases(const SummandWitness &w, const TowerModules &m);
/// t_j = f_j(1), beta_j(x) = g_j(x (x) 1).
QuasiBasis extract_ld3_quasibases(const SummandWitness &w, const TowerModules &m);

/// Projections onto the double cosets H g_i K and u_i = g_i^-1 (x) g_i.
/// Throws ConditionFails unless the normal closure of K lies in H.
QuasiBasis group_rd3_quasibases(const GroupTower &g, const TowerModules &m);
/// Projections onto K g_i^-1 H and t_i = g_i^-1 (x) g_i.
QuasiBasis group_ld3_quasibases(const GroupTower &g, const TowerModules &m);

/// A | B as the tower A | B | B.
AlgebraTower extension_tower(const AlgebraMap &b_to_a);

struct SeparabilityElement {
  TensorProduct bb; ///< B (x)_C B as a B-B bimodule
  SparseVec e;
};

/// e in (B (x)_C B)^B with e^1 e^2 = 1, or nullopt when B | C is not separable.
std::optional<SeparabilityElement> separability_element(const AlgebraMap &c_to_b);
/// Multiplication B (x)_C B -> B on quotient coordinates.
SparseVec multiply_out(const TensorProduct &t, const Algebra &a, const SparseVec &q);

bool is_h_separable(const AlgebraMap &c_to_b);

/// Independent check of the summand test for semisimple acting algebras:
/// M is a summand of a power of N iff the annihilator of N in X (x) Y^op
/// kills M. Throws OracleInapplicable when a trace form is degenerate.
bool multiplicity_oracle(const Bimodule &m, const Bimodule &n);

/// End A_B as an A-C bimodule, (a.f.c)(x) = a f(c x).
BimodulePtr end_a_b(const AlgebraTower &t);
/// Summand test of End A_B against A as A-C bimodules.
bool left_d3_via_endomorphisms(const AlgebraTower &t);

/// The one-dimensional algebra of scalars and its unit map into `a`.
AlgebraPtr scalar_algebra(const Field &f);
AlgebraMap unit_map(const AlgebraPtr &a);

} // namespace d3
