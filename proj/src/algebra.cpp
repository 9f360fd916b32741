#include "d3/algebra.hpp"

#include "d3/error.hpp"

namespace d3 {

Algebra::Algebra(Field field, std::vector<std::string> labels, std::vector<SparseVec> table, SparseVec unit)
    : field_(field), labels_(std::move(labels)), table_(std::move(table)), unit_(std::move(unit)) {
  if (table_.size() != labels_.size() * labels_.size())
    throw Error(ErrorKind::DimensionMismatch, "structure constant table has the wrong size");
  verify();
  generators_ = greedy_generators();
}

SparseVec Algebra::multiply(const SparseVec &x, const SparseVec &y) const {
  SparseVec out;
  for (const auto &a : x.entries())
    for (const auto &b : y.entries())
      out.axpy(a.value * b.value, table_[a.index * dim() + b.index]);
  return out;
}

LinMap Algebra::left_mult(const SparseVec &x) const {
  LinMap m(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j)
    for (const auto &a : x.entries())
      m.column(j).axpy(a.value, table_[a.index * dim() + j]);
  return m;
}

LinMap Algebra::right_mult(const SparseVec &x) const {
  LinMap m(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j)
    for (const auto &a : x.entries())
      m.column(j).axpy(a.value, table_[j * dim() + a.index]);
  return m;
}

void Algebra::verify() const {
  const std::size_t d = dim();
  for (std::size_t i = 0; i < d; ++i) {
    SparseVec e = basis(i);
    if (multiply(unit_, e) != e || multiply(e, unit_) != e)
      throw Error(ErrorKind::VerificationFailed, "unit is not two-sided on basis element " + labels_[i]);
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const SparseVec &ij = table_[i * d + j];
      for (std::size_t k = 0; k < d; ++k) {
        SparseVec lhs, rhs;
        for (const auto &e : ij.entries())
          lhs.axpy(e.value, table_[e.index * d + k]);
        for (const auto &e : table_[j * d + k].entries())
          rhs.axpy(e.value, table_[i * d + e.index]);
        if (lhs != rhs)
          throw Error(ErrorKind::VerificationFailed,
                      "multiplication is not associative on (" + labels_[i] + ", " + labels_[j] + ", " +
                          labels_[k] + ")");
      }
    }
}

std::vector<SparseVec> Algebra::greedy_generators() const {
  auto closure_dim = [&](const std::vector<SparseVec> &gens, Echelon &ech) {
    std::vector<SparseVec> queue{unit_};
    ech.insert(unit_);
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (const auto &g : gens) {
        SparseVec w = multiply(queue[q], g);
        if (ech.insert(w))
          queue.push_back(std::move(w));
      }
    return ech.rank();
  };
  std::vector<SparseVec> gens;
  Echelon current(dim());
  closure_dim(gens, current);
  for (std::size_t i = 0; i < dim() && current.rank() < dim(); ++i) {
    SparseVec e = basis(i);
    if (current.contains(e))
      continue;
    gens.push_back(e);
    current = Echelon(dim());
    closure_dim(gens, current);
  }
  return gens;
}

Algebra Algebra::opposite() const {
  const std::size_t d = dim();
  std::vector<SparseVec> t(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      t[i * d + j] = table_[j * d + i];
  Algebra op(field_, labels_, std::move(t), unit_);
  op.generators_ = generators_;
  return op;
}

bool Algebra::trace_form_nondegenerate(bool use_right_multiplication) const {
  const std::size_t d = dim();
  std::vector<Scalar> tr(d, field_.zero());
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l)
      tr[k] += use_right_multiplication ? table_[l * d + k].at(static_cast<Index>(l))
                                        : table_[k * d + l].at(static_cast<Index>(l));
  std::vector<SparseVec> rows;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Entry> row;
    for (std::size_t j = 0; j < d; ++j) {
      Scalar s = field_.zero();
      for (const auto &e : table_[i * d + j].entries())
        s += e.value * tr[e.index];
      if (!s.is_zero())
        row.push_back({static_cast<Index>(j), s});
    }
    rows.push_back(SparseVec::from_entries(std::move(row)));
  }
  return rank_of(d, rows) == d;
}

bool same_algebra(const Algebra &a, const Algebra &b) {
  if (&a == &b)
    return true;
  if (a.field() != b.field() || a.dim() != b.dim() || a.unit() != b.unit())
    return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (a.basis_product(i, j) != b.basis_product(i, j))
        return false;
  return true;
}

// ---------------------------------------------------------------- AlgebraMap

AlgebraMap::AlgebraMap(AlgebraPtr source, AlgebraPtr target, LinMap matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.cols() != source_->dim() || matrix_.rows() != target_->dim())
    throw Error(ErrorKind::DimensionMismatch, "algebra map matrix has the wrong shape");
  if (source_->field() != target_->field())
    throw Error(ErrorKind::NotAlgebraMap, "algebra map between different fields");
  if (apply(source_->unit()) != target_->unit())
    throw Error(ErrorKind::NotAlgebraMap, "map does not preserve the unit");
  for (std::size_t i = 0; i < source_->dim(); ++i)
    for (std::size_t j = 0; j < source_->dim(); ++j) {
      SparseVec lhs = apply(source_->basis_product(i, j));
      SparseVec rhs = target_->multiply(matrix_.column(i), matrix_.column(j));
      if (lhs != rhs)
        throw Error(ErrorKind::NotAlgebraMap, "map is not multiplicative on (" + source_->labels()[i] + ", " +
                                                  source_->labels()[j] + ")");
    }
}

AlgebraMap AlgebraMap::identity(const AlgebraPtr &a) {
  return AlgebraMap(a, a, LinMap::identity(a->dim(), a->field().one()));
}

AlgebraMap compose(const AlgebraMap &outer, const AlgebraMap &inner) {
  if (!same_algebra(*inner.target(), *outer.source()))
    throw Error(ErrorKind::DimensionMismatch, "composing algebra maps with mismatched algebras");
  return AlgebraMap(inner.source(), outer.target(), compose(outer.matrix(), inner.matrix()));
}

// ---------------------------------------------------------------- towers

AlgebraTower AlgebraTower::make(AlgebraPtr a, AlgebraPtr b, AlgebraPtr c, AlgebraMap ba, AlgebraMap cb) {
  if (!same_algebra(*ba.source(), *b) || !same_algebra(*ba.target(), *a) || !same_algebra(*cb.source(), *c) ||
      !same_algebra(*cb.target(), *b))
    throw Error(ErrorKind::DimensionMismatch, "tower maps do not match the algebras");
  AlgebraTower t;
  t.A = std::move(a);
  t.B = std::move(b);
  t.C = std::move(c);
  // Re-anchor the maps on the tower's own algebra handles.
  t.iota_BA = std::make_shared<AlgebraMap>(t.B, t.A, ba.matrix());
  t.iota_CB = std::make_shared<AlgebraMap>(t.C, t.B, cb.matrix());
  t.iota_CA = std::make_shared<AlgebraMap>(t.C, t.A, compose(ba.matrix(), cb.matrix()));
  return t;
}

AlgebraTower AlgebraTower::degenerate(AlgebraPtr a, AlgebraPtr b, AlgebraMap ba) {
  AlgebraMap id = AlgebraMap::identity(b);
  return make(std::move(a), b, b, std::move(ba), std::move(id));
}

bool AlgebraTower::is_degenerate() const {
  return same_algebra(*B, *C) && iota_CB->matrix() == LinMap::identity(B->dim(), B->field().one());
}

AlgebraTower AlgebraTower::opposite() const {
  auto a = std::make_shared<const Algebra>(A->opposite());
  auto b = std::make_shared<const Algebra>(B->opposite());
  auto c = std::make_shared<const Algebra>(C->opposite());
  return make(a, b, c, AlgebraMap(b, a, iota_BA->matrix()), AlgebraMap(c, b, iota_CB->matrix()));
}

AlgebraPtr group_algebra(const PermGroup &g, const Field &f) {
  const std::size_t n = g.order();
  std::vector<std::string> labels;
  labels.reserve(n);
  for (const auto &e : g.elements())
    labels.push_back(e.to_string());
  std::vector<SparseVec> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      table[i * n + j] = SparseVec::unit(g.mul(i, j), f.one());
  auto alg = std::make_shared<Algebra>(f, std::move(labels), std::move(table), SparseVec::unit(0, f.one()));
  std::vector<SparseVec> gens;
  for (const auto &s : g.generators())
    gens.push_back(SparseVec::unit(static_cast<Index>(g.index_of(s)), f.one()));
  alg->set_generators(std::move(gens));
  return alg;
}

AlgebraMap subalgebra_inclusion(const PermGroup &sub, const PermGroup &sup, const AlgebraPtr &fsub,
                                const AlgebraPtr &fsup) {
  if (!sub.is_subgroup_of(sup))
    throw Error(ErrorKind::NotSubgroup, "inclusion: not a subgroup");
  LinMap m(sup.order(), sub.order());
  for (std::size_t i = 0; i < sub.order(); ++i)
    m.column(i) = SparseVec::unit(static_cast<Index>(sup.index_of(sub.element(i))), fsub->field().one());
  return AlgebraMap(fsub, fsup, std::move(m));
}

AlgebraMap subalgebra_inclusion(const PermGroup &sub, const PermGroup &sup, const Field &f) {
  return subalgebra_inclusion(sub, sup, group_algebra(sub, f), group_algebra(sup, f));
}

AlgebraTower tower_from_groups(const GroupTower &t, const Field &f) {
  auto a = group_algebra(t.G, f);
  auto b = group_algebra(t.H, f);
  auto c = group_algebra(t.K, f);
  return AlgebraTower::make(a, b, c, subalgebra_inclusion(t.H, t.G, b, a), subalgebra_inclusion(t.K, t.H, c, b));
}

} // namespace d3
