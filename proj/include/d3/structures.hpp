#pragma once

#include <optional>
#include <vector>

#include "d3/depth.hpp"

namespace d3 {

/// An algebra whose basis is a basis of a subspace of some ambient space.
struct SubspaceAlgebra {
  AlgebraPtr algebra;
  Subspace space;
  /// Ambient coordinates of an algebra element.
  SparseVec embed(const SparseVec &x) const { return space.combine(x); }
};

/// The subalgebra of `a` carried by a subspace closed under multiplication.
SubspaceAlgebra algebra_on_subspace(const Algebra &a, const Subspace &s, const std::string &prefix);

/// Maps spanning a space closed under composition, as an algebra.
AlgebraPtr algebra_of_maps(const HomSpace &h, const std::string &prefix);

/// The rings, bimodules and centralizers attached to a tower:
/// T = (A (x)_B A)^B, U = (A (x)_C A)^C, P = (A (x)_B A)^C, Q = (A (x)_C A)^B,
/// R = A^B, V = A^C. Elements of P, T live in the quotient coordinates of
/// A (x)_B A and elements of Q, U in those of A (x)_C A.
class Section4 {
public:
  explicit Section4(TowerModules m);

  const TowerModules &modules() const { return m_; }
  const Algebra &A() const { return *m_.tower.A; }
  const TensorProduct &ab() const { return m_.aa; }
  const TensorProduct &ac() const { return ac_; }

  const SubspaceAlgebra &T() const { return T_; }
  const SubspaceAlgebra &U() const { return U_; }
  const SubspaceAlgebra &R() const { return R_; }
  const SubspaceAlgebra &V() const { return V_; }
  const Subspace &P() const { return P_; }
  const Subspace &Q() const { return Q_; }

  /// _T P_U and _U Q_T with the action axioms checked on construction.
  const BimodulePtr &P_tu() const { return P_tu_; }
  const BimodulePtr &Q_ut() const { return Q_ut_; }
  /// _V P_V: v.p.v' = v p^1 (x) p^2 v'.
  const BimodulePtr &P_vv() const { return P_vv_; }

  /// Coordinates of an element of A (x)_B A lying in P (throws otherwise).
  SparseVec p_coords(const SparseVec &x) const;
  SparseVec v_coords(const SparseVec &a) const;
  SparseVec r_coords(const SparseVec &a) const;

  /// t.p.u = u^1 p^1 t^1 (x)_B t^2 p^2 u^2, on ambient vectors.
  SparseVec act_tpu(const SparseVec &t, const SparseVec &p, const SparseVec &u) const;
  /// u.q.t = t^1 q^1 u^1 (x)_C u^2 q^2 t^2.
  SparseVec act_uqt(const SparseVec &u, const SparseVec &q, const SparseVec &t) const;
  /// pq = q^1 p^1 (x)_B p^2 q^2 and qp = p^1 q^1 (x)_C q^2 p^2.
  SparseVec pq(const SparseVec &p, const SparseVec &q) const;
  SparseVec qp(const SparseVec &q, const SparseVec &p) const;

private:
  TowerModules m_;
  TensorProduct ac_;
  SubspaceAlgebra T_, U_, R_, V_;
  Subspace P_, Q_;
  BimodulePtr P_tu_, Q_ut_, P_vv_;
};

struct MoritaReport {
  bool associative = false; ///< p(qp') = (pq)p' and q(pq') = (qp)q' on all basis triples
  bool balanced = false;    ///< (pu)q = p(uq) and (qt)p = q(tp)
  std::size_t rank_T = 0, rank_U = 0;
  bool onto_T = false, onto_U = false;
};
MoritaReport morita_products(const Section4 &s);

struct AnchorReport {
  std::size_t dim_source_R = 0, rank_R = 0; ///< R (x)_T P -> V
  std::size_t dim_source_V = 0, rank_V = 0; ///< V (x)_U Q -> R
  bool into_V = false, into_R = false;
  bool bijective_to_V = false, bijective_to_R = false;
};
AnchorReport anchor_maps(const Section4 &s);

/// E = End(_B A_C) inside S = End(_C A_C), with calS = End(_B A_B) inside E.
struct EndRings {
  HomSpace E_hom, S_hom, calS_hom;
  AlgebraPtr E, S, calS;
  bool chain = false; ///< calS <= E <= S realised by checked algebra maps
  /// E as an R-V bimodule, r.alpha.v = r alpha(-) v.
  BimodulePtr E_rv;
  SparseVec e_coords(const LinMap &f) const;
  SparseVec s_coords(const LinMap &f) const;
};
EndRings build_end_rings(const Section4 &s);

/// <p, alpha> = p^1 alpha(p^2) as an element of A.
SparseVec pairing(const Section4 &s, const SparseVec &p, const LinMap &alpha);

struct PairingReport {
  std::size_t dim_E = 0, dim_hom = 0, rank = 0;
  bool values_in_V = false;
  bool bijective = false;
  bool inverse_on_E = false;   ///< sum_i gamma_i(-) <u_i, alpha> = alpha
  bool inverse_on_hom = false; ///< F -> sum_i gamma_i(-) F(u_i) -> <-, .> = F
};
PairingReport pairing_check(const Section4 &s, const EndRings &e, const QuasiBasis &qb);

struct DualBasesReport {
  bool on_P = false; ///< p = sum_i (p^1 gamma_i(p^2)) . u_i
  bool on_E = false; ///< alpha = sum_i gamma_i(-) u_i^1 alpha(u_i^2)
};
DualBasesReport dual_bases_check(const Section4 &s, const EndRings &e, const QuasiBasis &qb);

/// The V-coring on P. Coproduct and counit stored as matrices on P
/// coordinates (values in P (x)_V P quotient coordinates and in V).
struct CoringP {
  TensorProduct pp;   ///< P (x)_V P
  TensorProduct ppp;  ///< (P (x)_V P) (x)_V P
  TensorProduct cube; ///< A (x)_B A (x)_B A
  Subspace cube_c;    ///< its C-centralizer
  LinMap phi, psi;    ///< P (x)_V P <-> cube_c (coordinates)
  LinMap coproduct;
  LinMap counit;
  SparseVec grouplike;
  bool identification = false;
  bool coproduct_matches_cube = false; ///< phi(Delta p) = p^1 (x) 1 (x) p^2
  bool coassociative = false;
  bool counit_left = false, counit_right = false;
  bool grouplike_ok = false;
};
/// Throws IdentificationFailure when the maps between P (x)_V P and
/// (A (x)_B A (x)_B A)^C are not mutually inverse.
CoringP build_coring(const Section4 &s, const QuasiBasis &qb);

/// <-,alpha> * <-,beta> = <-, alpha o beta> on all basis pairs of E.
bool convolution_check(const Section4 &s, const CoringP &c, const EndRings &e);

struct PreGaloisReport {
  std::size_t dim_AB = 0, dim_AVP = 0;
  bool inverse_left = false, inverse_right = false;
  bool invertible() const { return inverse_left && inverse_right; }
  LinMap beta;
};
PreGaloisReport pre_galois(const Section4 &s, const QuasiBasis &qb);

struct CoactionReport {
  bool lands = false;      ///< values in E (x)_V S, resp. calS (x)_R E
  bool counital = false;
  std::size_t quasibasis_size = 0;
};
/// Coproduct of S restricted to E, using left D2 quasibases of A | C.
/// Throws NotLeftD2.
CoactionReport coideal_check(const Section4 &s, const EndRings &e);
/// calS-coaction on E, using right D2 quasibases of A | B. Throws NotRightD2.
CoactionReport bicomodule_coaction(const Section4 &s, const EndRings &e);

// ---------------------------------------------------------------- Frobenius

/// trace : B -> C the projection onto the span of K; H = disjoint union of
/// K h_i, x_i = h_i^-1, y_i = h_i.
struct FrobeniusSystem {
  AlgebraPtr B, C;
  std::shared_ptr<const AlgebraMap> iota; ///< C -> B
  LinMap trace;                           ///< dim C x dim B
  std::vector<SparseVec> x, y;
  bool dual_bases = false; ///< sum_i trace(a x_i) y_i = a = sum_i x_i trace(y_i a)
  bool bimodule_map = false;
};
FrobeniusSystem frobenius_system(const PermGroup &h, const PermGroup &k, const Field &f);

/// B (x)_C B with (x (x) y)(x' (x) y') = x trace(y x') (x) y' and its
/// identification with End B_C.
struct EndoAlgebra {
  TensorProduct bb;
  AlgebraPtr algebra;
  std::shared_ptr<const AlgebraMap> lambda; ///< B -> A_end, b -> b . unit
  bool iso_multiplicative = false;
  bool iso_bijective = false;
  std::size_t dim_end = 0; ///< dim End B_C
  AlgebraTower tower;      ///< A_end | B | C
};
EndoAlgebra endo_algebra(const FrobeniusSystem &fs);

struct EndoTowerReport {
  bool frobenius_ok = false;
  bool endo_iso_ok = false;
  std::size_t dim_end = 0;
  bool rd3 = false, ld3 = false;
  std::optional<bool> rd2_composite, ld2_composite;
  std::size_t rd3_witness = 0, ld3_witness = 0, rd2_witness = 0, ld2_witness = 0;
};
EndoTowerReport endomorphism_tower_experiment(const PermGroup &h, const PermGroup &k, const Field &f);

} // namespace d3
