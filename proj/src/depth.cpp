#include "d3/depth.hpp"

#include "d3/error.hpp"

namespace d3 {

TowerModules tower_modules(const AlgebraTower &t) {
  TowerModules m;
  m.tower = t;
  AlgebraMap id = AlgebraMap::identity(t.A);
  auto a_ab = restricted_bimodule(t.A, id, *t.iota_BA);
  auto b_aa = restricted_bimodule(t.A, *t.iota_BA, id);
  m.aa = tensor_over(*a_ab, *b_aa);
  m.a_ac = restricted_bimodule(t.A, id, *t.iota_CA);
  m.aa_ac = restrict_scalars(*m.aa.module, id, *t.iota_CA);
  m.a_ca = restricted_bimodule(t.A, *t.iota_CA, id);
  m.aa_ca = restrict_scalars(*m.aa.module, *t.iota_CA, id);
  m.a_bc = restricted_bimodule(t.A, *t.iota_BA, *t.iota_CA);
  m.a_cb = restricted_bimodule(t.A, *t.iota_CA, *t.iota_BA);
  return m;
}

const char *to_string(Condition c) {
  switch (c) {
  case Condition::RD2: return "rD2";
  case Condition::LD2: return "lD2";
  case Condition::RD3: return "rD3";
  case Condition::LD3: return "lD3";
  case Condition::D3: return "D3";
  }
  return "?";
}

bool check_quasibasis(const TowerModules &m, const QuasiBasis &qb) {
  const Algebra &A = *m.tower.A;
  const Bimodule &aa = *m.aa.module;
  if (qb.maps.size() != qb.elements.size())
    return false;
  const BimodulePtr &home = qb.side == Side::Right ? m.a_bc : m.a_cb;
  for (const auto &g : qb.maps) {
    try {
      BimoduleMap check(home, home, g);
    } catch (const Error &) {
      return false;
    }
  }
  for (const auto &u : qb.elements)
    for (const auto &c : m.tower.C->generators()) {
      SparseVec z = m.tower.iota_CA->apply(c);
      if (aa.act_left(z, u) != aa.act_right(u, z))
        return false;
    }
  for (std::size_t x = 0; x < A.dim(); ++x)
    for (std::size_t y = 0; y < A.dim(); ++y) {
      SparseVec ex = A.basis(x), ey = A.basis(y);
      SparseVec sum;
      for (std::size_t i = 0; i < qb.size(); ++i) {
        if (qb.side == Side::Right)
          sum.axpy(Scalar(1), aa.act_left(A.multiply(ex, qb.maps[i].apply(ey)), qb.elements[i]));
        else
          sum.axpy(Scalar(1), aa.act_right(qb.elements[i], A.multiply(qb.maps[i].apply(ex), ey)));
      }
      if (sum != m.tensor(ex, ey))
        return false;
    }
  return true;
}

QuasiBasis extract_rd3_quasibases(const SummandWitness &w, const TowerModules &m) {
  const Algebra &A = *m.tower.A;
  QuasiBasis qb;
  qb.side = Side::Right;
  for (std::size_t i = 0; i < w.N; ++i) {
    qb.elements.push_back(w.f[i].apply(A.unit()));
    LinMap gamma(A.dim(), A.dim());
    for (std::size_t y = 0; y < A.dim(); ++y)
      gamma.column(y) = w.g[i].apply(m.tensor(A.unit(), A.basis(y)));
    qb.maps.push_back(std::move(gamma));
  }
  if (!check_quasibasis(m, qb))
    throw Error(ErrorKind::VerificationFailed, "extracted right quasibases fail the defining identity");
  return qb;
}

QuasiBasis extract_ld3_quasibases(const SummandWitness &w, const TowerModules &m) {
  const Algebra &A = *m.tower.A;
  QuasiBasis qb;
  qb.side = Side::Left;
  for (std::size_t j = 0; j < w.N; ++j) {
    qb.elements.push_back(w.f[j].apply(A.unit()));
    LinMap beta(A.dim(), A.dim());
    for (std::size_t x = 0; x < A.dim(); ++x)
      beta.column(x) = w.g[j].apply(m.tensor(A.basis(x), A.unit()));
    qb.maps.push_back(std::move(beta));
  }
  if (!check_quasibasis(m, qb))
    throw Error(ErrorKind::VerificationFailed, "extracted left quasibases fail the defining identity");
  return qb;
}

namespace {

DepthCertificate certify(Condition cond, const BimodulePtr &mm, const BimodulePtr &nn, const TowerModules &m,
                         bool right) {
  DepthCertificate cert;
  cert.condition = cond;
  SummandResult r = is_direct_summand_of_power(mm, nn);
  cert.verdict = r.is_summand;
  cert.defect = r.defect;
  cert.trace_rank = r.trace_rank;
  if (r.is_summand) {
    cert.quasibasis = right ? extract_rd3_quasibases(*r.witness, m) : extract_ld3_quasibases(*r.witness, m);
    cert.witness = std::move(r.witness);
  }
  return cert;
}

void require_degenerate(const AlgebraTower &t) {
  if (!t.is_degenerate())
    throw Error(ErrorKind::TowerNotDegenerate, "depth two needs a tower of the form A | B | B");
}

} // namespace

DepthCertificate is_rD3(const TowerModules &m) { return certify(Condition::RD3, m.aa_ac, m.a_ac, m, true); }
DepthCertificate is_lD3(const TowerModules &m) { return certify(Condition::LD3, m.aa_ca, m.a_ca, m, false); }
DepthCertificate is_rD3(const AlgebraTower &t) { return is_rD3(tower_modules(t)); }
DepthCertificate is_lD3(const AlgebraTower &t) { return is_lD3(tower_modules(t)); }

DepthCertificate is_rD2(const AlgebraTower &t) {
  require_degenerate(t);
  DepthCertificate c = is_rD3(t);
  c.condition = Condition::RD2;
  return c;
}

DepthCertificate is_lD2(const AlgebraTower &t) {
  require_degenerate(t);
  DepthCertificate c = is_lD3(t);
  c.condition = Condition::LD2;
  return c;
}

// ---------------------------------------------------------------- groups

namespace {

QuasiBasis double_coset_quasibases(const GroupTower &g, const TowerModules &m, Side side) {
  if (!check_group_depth3_condition(g))
    throw Error(ErrorKind::ConditionFails, "normal closure of K is not contained in H");
  const PermGroup &G = g.G;
  const Field &f = m.tower.A->field();
  const std::size_t n = G.order();
  QuasiBasis qb;
  qb.side = side;
  for (const auto &dc : double_cosets(G, g.H, g.K)) {
    auto rep = static_cast<std::size_t>(G.index_of(dc.representative));
    LinMap proj(n, n);
    for (auto x : dc.members) {
      std::size_t at = side == Side::Right ? x : G.inv(x);
      proj.column(at) = SparseVec::unit(static_cast<Index>(at), f.one());
    }
    qb.maps.push_back(std::move(proj));
    qb.elements.push_back(m.tensor(SparseVec::unit(G.inv(rep), f.one()), SparseVec::unit(static_cast<Index>(rep), f.one())));
  }
  if (!check_quasibasis(m, qb))
    throw Error(ErrorKind::VerificationFailed, "double coset quasibases fail the defining identity");
  return qb;
}

} // namespace

QuasiBasis group_rd3_quasibases(const GroupTower &g, const TowerModules &m) {
  return double_coset_quasibases(g, m, Side::Right);
}

QuasiBasis group_ld3_quasibases(const GroupTower &g, const TowerModules &m) {
  return double_coset_quasibases(g, m, Side::Left);
}

// ---------------------------------------------------------------- separability

AlgebraTower extension_tower(const AlgebraMap &b_to_a) {
  return AlgebraTower::degenerate(b_to_a.target(), b_to_a.source(), b_to_a);
}

SparseVec multiply_out(const TensorProduct &t, const Algebra &a, const SparseVec &q) {
  SparseVec out, rep = t.expand(q);
  for (const auto &e : rep.entries())
    out.axpy(e.value, a.basis_product(e.index / t.dim_right, e.index % t.dim_right));
  return out;
}

namespace {

TensorProduct b_tensor_c_b(const AlgebraMap &c_to_b) {
  const AlgebraPtr &b = c_to_b.target();
  AlgebraMap id = AlgebraMap::identity(b);
  return tensor_over(*restricted_bimodule(b, id, c_to_b), *restricted_bimodule(b, c_to_b, id));
}

} // namespace

std::optional<SeparabilityElement> separability_element(const AlgebraMap &c_to_b) {
  const Algebra &B = *c_to_b.target();
  TensorProduct bb = b_tensor_c_b(c_to_b);
  Subspace inv = centralizer_submodule(*bb.module, AlgebraMap::identity(c_to_b.target()));
  std::vector<SparseVec> images;
  for (const auto &v : inv.basis())
    images.push_back(multiply_out(bb, B, v));
  // Row r: sum_k c_k mu(v_k)[r] = unit[r].
  LinMap mu(B.dim(), images);
  std::vector<SparseVec> rows = mu.row_view();
  std::vector<Scalar> rhs;
  for (std::size_t r = 0; r < B.dim(); ++r)
    rhs.push_back(B.unit().at(static_cast<Index>(r)));
  auto c = solve(inv.dim(), rows, rhs);
  if (!c)
    return std::nullopt;
  SeparabilityElement s{std::move(bb), inv.combine(*c)};
  if (multiply_out(s.bb, B, s.e) != B.unit())
    throw Error(ErrorKind::VerificationFailed, "separability element does not multiply to 1");
  return s;
}

bool is_h_separable(const AlgebraMap &c_to_b) {
  TensorProduct bb = b_tensor_c_b(c_to_b);
  return is_direct_summand_of_power(bb.module, regular_bimodule(c_to_b.target())).is_summand;
}

// ---------------------------------------------------------------- oracle

bool multiplicity_oracle(const Bimodule &m, const Bimodule &n) {
  if (!same_acting_pair(m, n))
    throw Error(ErrorKind::DimensionMismatch, "oracle needs a common acting pair");
  if (!m.left()->trace_form_nondegenerate() || !m.right()->trace_form_nondegenerate(true))
    throw Error(ErrorKind::OracleInapplicable, "acting algebras are not known to be semisimple");
  const std::size_t dx = m.left()->dim(), dy = m.right()->dim();
  auto action = [&](const Bimodule &mod, std::size_t i, std::size_t j) {
    return compose(mod.left_basis_action(i), mod.right_basis_action(j));
  };
  // Relations among the operators x_i (-) y_j on N span its annihilator.
  TrackedSpan span(n.dim() * n.dim());
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < dx; ++i)
    for (std::size_t j = 0; j < dy; ++j) {
      SparseVec v = action(n, i, j).flatten();
      auto c = span.express(v);
      if (!c) {
        span.insert(v);
        pairs.emplace_back(i, j);
        continue;
      }
      LinMap on_m = action(m, i, j);
      for (const auto &e : c->entries()) {
        auto [a, b] = pairs[e.index];
        on_m = on_m - action(m, a, b).scaled(e.value);
      }
      if (!on_m.is_zero())
        return false;
    }
  return true;
}

// ---------------------------------------------------------------- End A_B

AlgebraPtr scalar_algebra(const Field &f) {
  return std::make_shared<Algebra>(f, std::vector<std::string>{"1"}, std::vector<SparseVec>{SparseVec::unit(0, f.one())},
                                   SparseVec::unit(0, f.one()));
}

AlgebraMap unit_map(const AlgebraPtr &a) {
  auto k = scalar_algebra(a->field());
  LinMap m(a->dim(), 1);
  m.column(0) = a->unit();
  return AlgebraMap(k, a, std::move(m));
}

BimodulePtr end_a_b(const AlgebraTower &t) {
  const Algebra &A = *t.A;
  BimodulePtr a_b = restricted_bimodule(t.A, unit_map(t.A), *t.iota_BA);
  HomSpace end = hom_space(a_b, a_b);
  const std::size_t d = end.dim();
  auto coords = [&](const LinMap &f) {
    auto c = end.coordinates(f);
    if (!c)
      throw Error(ErrorKind::VerificationFailed, "End A_B is not closed under the A-C action");
    return *c;
  };
  std::vector<LinMap> l, r;
  for (std::size_t i = 0; i < A.dim(); ++i) {
    LinMap act(d, d);
    LinMap la = A.left_mult(A.basis(i));
    for (std::size_t k = 0; k < d; ++k)
      act.column(k) = coords(compose(la, end.basis[k].matrix()));
    l.push_back(std::move(act));
  }
  for (std::size_t j = 0; j < t.C->dim(); ++j) {
    LinMap act(d, d);
    LinMap lc = A.left_mult(t.iota_CA->apply(t.C->basis(j)));
    for (std::size_t k = 0; k < d; ++k)
      act.column(k) = coords(compose(end.basis[k].matrix(), lc));
    r.push_back(std::move(act));
  }
  return std::make_shared<Bimodule>(t.A, t.C, d, std::move(l), std::move(r));
}

bool left_d3_via_endomorphisms(const AlgebraTower &t) {
  AlgebraMap id = AlgebraMap::identity(t.A);
  return is_direct_summand_of_power(end_a_b(t), restricted_bimodule(t.A, id, *t.iota_CA)).is_summand;
}

} // namespace d3
