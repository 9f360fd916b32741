#include "d3/bimodule.hpp"

#include <algorithm>

#include "d3/error.hpp"

namespace d3 {

namespace {

LinMap combination(const std::vector<LinMap> &mats, const SparseVec &x, std::size_t dim) {
  LinMap out(dim, dim);
  for (const auto &e : x.entries())
    for (std::size_t j = 0; j < dim; ++j)
      out.column(j).axpy(e.value, mats[e.index].column(j));
  return out;
}

std::string dims(const char *what, std::size_t a, std::size_t b) {
  return std::string(what) + " (" + std::to_string(a) + " vs " + std::to_string(b) + ")";
}

} // namespace

// ---------------------------------------------------------------- Bimodule

Bimodule::Bimodule(AlgebraPtr left, AlgebraPtr right, std::size_t dim, std::vector<LinMap> left_action,
                   std::vector<LinMap> right_action)
    : left_(std::move(left)), right_(std::move(right)), dim_(dim), left_action_(std::move(left_action)),
      right_action_(std::move(right_action)) {
  if (left_action_.size() != left_->dim() || right_action_.size() != right_->dim())
    throw Error(ErrorKind::DimensionMismatch, "one action matrix per algebra basis element is required");
  if (left_->field() != right_->field())
    throw Error(ErrorKind::NotBimodule, "left and right algebras over different fields");
  for (const auto *acts : {&left_action_, &right_action_})
    for (const auto &m : *acts)
      if (m.rows() != dim_ || m.cols() != dim_)
        throw Error(ErrorKind::DimensionMismatch, "action matrix has the wrong shape");
  verify();
}

void Bimodule::verify() const {
  const std::size_t dx = left_->dim(), dy = right_->dim();
  if (left_matrix(left_->unit()) != LinMap::identity(dim_, field().one()))
    throw Error(ErrorKind::NotBimodule, "left unit does not act as the identity");
  if (right_matrix(right_->unit()) != LinMap::identity(dim_, field().one()))
    throw Error(ErrorKind::NotBimodule, "right unit does not act as the identity");
  for (std::size_t k = 0; k < dim_; ++k) {
    SparseVec m = SparseVec::unit(static_cast<Index>(k), field().one());
    std::vector<SparseVec> lm(dx), mr(dy);
    for (std::size_t i = 0; i < dx; ++i)
      lm[i] = left_action_[i].apply(m);
    for (std::size_t j = 0; j < dy; ++j)
      mr[j] = right_action_[j].apply(m);
    for (std::size_t i = 0; i < dx; ++i)
      for (std::size_t j = 0; j < dx; ++j)
        if (left_action_[i].apply(lm[j]) != combination(left_action_, left_->basis_product(i, j), dim_).apply(m))
          throw Error(ErrorKind::NotBimodule, "left action is not associative");
    for (std::size_t i = 0; i < dy; ++i)
      for (std::size_t j = 0; j < dy; ++j)
        if (right_action_[j].apply(mr[i]) !=
            combination(right_action_, right_->basis_product(i, j), dim_).apply(m))
          throw Error(ErrorKind::NotBimodule, "right action is not associative");
    for (std::size_t i = 0; i < dx; ++i)
      for (std::size_t j = 0; j < dy; ++j)
        if (left_action_[i].apply(mr[j]) != right_action_[j].apply(lm[i]))
          throw Error(ErrorKind::NotBimodule, "left and right actions do not commute");
  }
}

LinMap Bimodule::left_matrix(const SparseVec &x) const { return combination(left_action_, x, dim_); }
LinMap Bimodule::right_matrix(const SparseVec &y) const { return combination(right_action_, y, dim_); }

SparseVec Bimodule::act_left(const SparseVec &x, const SparseVec &m) const {
  SparseVec out;
  for (const auto &e : x.entries())
    out.axpy(e.value, left_action_[e.index].apply(m));
  return out;
}

SparseVec Bimodule::act_right(const SparseVec &m, const SparseVec &y) const {
  SparseVec out;
  for (const auto &e : y.entries())
    out.axpy(e.value, right_action_[e.index].apply(m));
  return out;
}

const std::vector<SparseVec> &Bimodule::generators() const {
  if (have_generators_)
    return generators_;
  std::vector<LinMap> ops;
  for (const auto &g : left_->generators())
    ops.push_back(left_matrix(g));
  for (const auto &g : right_->generators())
    ops.push_back(right_matrix(g));
  Echelon span(dim_);
  std::vector<SparseVec> gens;
  for (std::size_t k = 0; k < dim_ && span.rank() < dim_; ++k) {
    SparseVec e = SparseVec::unit(static_cast<Index>(k), field().one());
    if (!span.insert(e))
      continue;
    gens.push_back(e);
    std::vector<SparseVec> queue{e};
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (const auto &op : ops) {
        SparseVec w = op.apply(queue[q]);
        if (span.insert(w))
          queue.push_back(std::move(w));
      }
  }
  generators_ = std::move(gens);
  have_generators_ = true;
  return generators_;
}

bool same_acting_pair(const Bimodule &m, const Bimodule &n) {
  return same_algebra(*m.left(), *n.left()) && same_algebra(*m.right(), *n.right());
}

bool same_bimodule(const Bimodule &m, const Bimodule &n) {
  if (&m == &n)
    return true;
  if (m.dim() != n.dim() || !same_acting_pair(m, n))
    return false;
  for (std::size_t i = 0; i < m.left()->dim(); ++i)
    if (m.left_basis_action(i) != n.left_basis_action(i))
      return false;
  for (std::size_t j = 0; j < m.right()->dim(); ++j)
    if (m.right_basis_action(j) != n.right_basis_action(j))
      return false;
  return true;
}

// ---------------------------------------------------------------- maps

BimoduleMap::BimoduleMap(BimodulePtr source, BimodulePtr target, LinMap matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.cols() != source_->dim() || matrix_.rows() != target_->dim())
    throw Error(ErrorKind::DimensionMismatch,
                dims("bimodule map matrix has the wrong shape", matrix_.cols(), source_->dim()));
  if (!same_acting_pair(*source_, *target_))
    throw Error(ErrorKind::NotBimoduleMap, "source and target have different acting algebras");
  for (const auto &x : source_->left()->generators())
    if (compose(matrix_, source_->left_matrix(x)) != compose(target_->left_matrix(x), matrix_))
      throw Error(ErrorKind::NotBimoduleMap, "map does not commute with the left action");
  for (const auto &y : source_->right()->generators())
    if (compose(matrix_, source_->right_matrix(y)) != compose(target_->right_matrix(y), matrix_))
      throw Error(ErrorKind::NotBimoduleMap, "map does not commute with the right action");
}

BimoduleMap identity_map(const BimodulePtr &m) {
  return BimoduleMap(m, m, LinMap::identity(m->dim(), m->field().one()));
}

BimoduleMap compose_maps(const BimoduleMap &f, const BimoduleMap &g) {
  if (!same_bimodule(*g.target(), *f.source()))
    throw Error(ErrorKind::DimensionMismatch, "composing maps whose modules do not match");
  return BimoduleMap(g.source(), f.target(), compose(f.matrix(), g.matrix()));
}

BimoduleMap operator+(const BimoduleMap &a, const BimoduleMap &b) {
  return BimoduleMap(a.source(), a.target(), a.matrix() + b.matrix());
}

BimoduleMap scale(const BimoduleMap &f, const Scalar &s) {
  return BimoduleMap(f.source(), f.target(), f.matrix().scaled(s));
}

// ---------------------------------------------------------------- constructions

BimodulePtr restricted_bimodule(const AlgebraPtr &a, const AlgebraMap &left_via, const AlgebraMap &right_via) {
  if (!same_algebra(*left_via.target(), *a) || !same_algebra(*right_via.target(), *a))
    throw Error(ErrorKind::DimensionMismatch, "restriction maps must land in the algebra");
  std::vector<LinMap> l, r;
  for (std::size_t i = 0; i < left_via.source()->dim(); ++i)
    l.push_back(a->left_mult(left_via.matrix().column(i)));
  for (std::size_t j = 0; j < right_via.source()->dim(); ++j)
    r.push_back(a->right_mult(right_via.matrix().column(j)));
  return std::make_shared<Bimodule>(left_via.source(), right_via.source(), a->dim(), std::move(l), std::move(r));
}

BimodulePtr regular_bimodule(const AlgebraPtr &a) {
  AlgebraMap id = AlgebraMap::identity(a);
  return restricted_bimodule(a, id, id);
}

BimodulePtr restrict_scalars(const Bimodule &m, const AlgebraMap &left_via, const AlgebraMap &right_via) {
  if (!same_algebra(*left_via.target(), *m.left()) || !same_algebra(*right_via.target(), *m.right()))
    throw Error(ErrorKind::DimensionMismatch, "restriction maps must land in the acting algebras");
  std::vector<LinMap> l, r;
  for (std::size_t i = 0; i < left_via.source()->dim(); ++i)
    l.push_back(m.left_matrix(left_via.matrix().column(i)));
  for (std::size_t j = 0; j < right_via.source()->dim(); ++j)
    r.push_back(m.right_matrix(right_via.matrix().column(j)));
  return std::make_shared<Bimodule>(left_via.source(), right_via.source(), m.dim(), std::move(l), std::move(r));
}

BimodulePtr direct_sum(const Bimodule &m, const Bimodule &n) {
  if (!same_acting_pair(m, n))
    throw Error(ErrorKind::DimensionMismatch, "direct sum of bimodules over different algebras");
  const std::size_t dm = m.dim(), d = dm + n.dim();
  auto block = [&](const LinMap &a, const LinMap &b) {
    LinMap out(d, d);
    for (std::size_t j = 0; j < dm; ++j)
      out.column(j) = a.column(j);
    for (std::size_t j = 0; j < n.dim(); ++j)
      out.column(dm + j) = b.column(j).shifted(static_cast<Index>(dm));
    return out;
  };
  std::vector<LinMap> l, r;
  for (std::size_t i = 0; i < m.left()->dim(); ++i)
    l.push_back(block(m.left_basis_action(i), n.left_basis_action(i)));
  for (std::size_t j = 0; j < m.right()->dim(); ++j)
    r.push_back(block(m.right_basis_action(j), n.right_basis_action(j)));
  return std::make_shared<Bimodule>(m.left(), m.right(), d, std::move(l), std::move(r));
}

// ---------------------------------------------------------------- tensor products

SparseVec outer(const SparseVec &m, const SparseVec &n, std::size_t dim_n) {
  SparseVec out;
  for (const auto &a : m.entries())
    for (const auto &b : n.entries())
      out.push_back_unchecked(static_cast<Index>(a.index * dim_n + b.index), a.value * b.value);
  return out;
}

SparseVec TensorProduct::pure(const SparseVec &m, const SparseVec &n) const {
  return projection.apply(outer(m, n, dim_right));
}

TensorProduct tensor_over(const Bimodule &m, const Bimodule &n) {
  if (!same_algebra(*m.right(), *n.left()))
    throw Error(ErrorKind::DimensionMismatch, "tensor product over mismatched algebras");
  const std::size_t dm = m.dim(), dn = n.dim(), d = dm * dn;
  const Scalar one = m.field().one();
  Echelon rel(d);
  for (const auto &b : m.right()->generators()) {
    LinMap rb = m.right_matrix(b), lb = n.left_matrix(b);
    for (std::size_t i = 0; i < dm; ++i)
      for (std::size_t j = 0; j < dn; ++j) {
        SparseVec r = outer(rb.column(i), SparseVec::unit(static_cast<Index>(j), one), dn);
        r.axpy(-one, outer(SparseVec::unit(static_cast<Index>(i), one), lb.column(j), dn));
        rel.insert(std::move(r));
      }
  }
  Subspace rows = rel.row_space();
  std::vector<std::int64_t> pos(d, -1), pivot_of(d, -1);
  for (std::size_t k = 0; k < rows.dim(); ++k)
    pivot_of[rows.keys()[k]] = static_cast<std::int64_t>(k);
  std::vector<Index> free_cols;
  for (std::size_t c = 0; c < d; ++c)
    if (pivot_of[c] < 0) {
      pos[c] = static_cast<std::int64_t>(free_cols.size());
      free_cols.push_back(static_cast<Index>(c));
    }
  const std::size_t q = free_cols.size();
  TensorProduct t;
  t.dim_left = dm;
  t.dim_right = dn;
  t.projection = LinMap(q, d);
  t.section = LinMap(d, q);
  for (std::size_t c = 0; c < d; ++c) {
    if (pos[c] >= 0) {
      t.projection.column(c) = SparseVec::unit(static_cast<Index>(pos[c]), one);
      continue;
    }
    // e_c + sum_k r_k e_k is a relation, so e_c = -sum_k r_k e_k.
    std::vector<Entry> col;
    for (const auto &e : rows.basis()[pivot_of[c]].entries())
      if (e.index != c)
        col.push_back({static_cast<Index>(pos[e.index]), -e.value});
    t.projection.column(c) = SparseVec::from_entries(std::move(col));
  }
  for (std::size_t k = 0; k < q; ++k)
    t.section.column(k) = SparseVec::unit(free_cols[k], one);

  std::vector<LinMap> l, r;
  for (std::size_t i = 0; i < m.left()->dim(); ++i) {
    LinMap act(q, q);
    for (std::size_t k = 0; k < q; ++k) {
      Index c = free_cols[k];
      act.column(k) = t.pure(m.left_basis_action(i).column(c / dn), SparseVec::unit(c % dn, one));
    }
    l.push_back(std::move(act));
  }
  for (std::size_t j = 0; j < n.right()->dim(); ++j) {
    LinMap act(q, q);
    for (std::size_t k = 0; k < q; ++k) {
      Index c = free_cols[k];
      act.column(k) = t.pure(SparseVec::unit(c / dn, one), n.right_basis_action(j).column(c % dn));
    }
    r.push_back(std::move(act));
  }
  t.module = std::make_shared<Bimodule>(m.left(), n.right(), q, std::move(l), std::move(r));
  return t;
}

// ---------------------------------------------------------------- centralizers

Subspace centralizer_submodule(const Bimodule &m, const AlgebraMap &left_via, const AlgebraMap &right_via) {
  if (!same_algebra(*left_via.source(), *right_via.source()) || !same_algebra(*left_via.target(), *m.left()) ||
      !same_algebra(*right_via.target(), *m.right()))
    throw Error(ErrorKind::DimensionMismatch, "centralizer: maps do not match the bimodule");
  std::vector<SparseVec> rows;
  for (const auto &z : left_via.source()->generators()) {
    LinMap diff = m.left_matrix(left_via.apply(z)) - m.right_matrix(right_via.apply(z));
    for (auto &row : diff.row_view())
      if (!row.empty())
        rows.push_back(std::move(row));
  }
  return nullspace(m.dim(), rows);
}

Subspace centralizer_submodule(const Bimodule &m, const AlgebraMap &via) {
  return centralizer_submodule(m, via, via);
}

// ---------------------------------------------------------------- hom spaces

namespace {

// Equations F A - B F = 0 for an unknown F : k^dm -> k^dn, variables indexed
// column-major (j * dn + i).
void add_commutation_rows(const LinMap &a, const LinMap &b, std::size_t dm, std::size_t dn,
                          std::vector<SparseVec> &out) {
  std::vector<SparseVec> b_rows = b.row_view();
  for (std::size_t j = 0; j < dm; ++j)
    for (std::size_t i = 0; i < dn; ++i) {
      // (F A)[i, j] = sum_k F[i, k] A[k, j];  (B F)[i, j] = sum_k B[i, k] F[k, j]
      std::vector<Entry> row;
      for (const auto &e : a.column(j).entries())
        row.push_back({static_cast<Index>(e.index * dn + i), e.value});
      for (const auto &e : b_rows[i].entries())
        row.push_back({static_cast<Index>(j * dn + e.index), -e.value});
      SparseVec r = SparseVec::from_entries(std::move(row));
      if (!r.empty())
        out.push_back(std::move(r));
    }
}

} // namespace

HomSpace hom_space(const BimodulePtr &m, const BimodulePtr &n) {
  if (!same_acting_pair(*m, *n))
    throw Error(ErrorKind::DimensionMismatch, "hom space between bimodules over different algebras");
  const std::size_t dm = m->dim(), dn = n->dim();
  std::vector<SparseVec> rows;
  for (const auto &x : m->left()->generators())
    add_commutation_rows(m->left_matrix(x), n->left_matrix(x), dm, dn, rows);
  for (const auto &y : m->right()->generators())
    add_commutation_rows(m->right_matrix(y), n->right_matrix(y), dm, dn, rows);
  HomSpace h;
  h.source = m;
  h.target = n;
  h.flat = nullspace(dm * dn, rows);
  for (const auto &v : h.flat.basis())
    h.basis.emplace_back(m, n, LinMap::unflatten(v, dn, dm));
  return h;
}

// ---------------------------------------------------------------- summands

void verify_witness(const SummandWitness &w, const Bimodule &m) {
  if (w.f.size() != w.N || w.g.size() != w.N)
    throw Error(ErrorKind::VerificationFailed, "witness size does not match its map lists");
  LinMap sum(m.dim(), m.dim());
  for (std::size_t i = 0; i < w.N; ++i) {
    if (!same_bimodule(*w.g[i].source(), m) || !same_bimodule(*w.f[i].target(), m))
      throw Error(ErrorKind::VerificationFailed, "witness maps do not start and end at M");
    sum = sum + compose(w.f[i].matrix(), w.g[i].matrix());
  }
  if (sum != LinMap::identity(m.dim(), m.field().one()))
    throw Error(ErrorKind::VerificationFailed, "witness maps do not compose to the identity");
}

namespace {

// Greedy generators of a space of maps under precomposition (or
// postcomposition) with a basis of End(N); maps compared by their flattening.
std::vector<std::size_t> module_generators(const std::vector<BimoduleMap> &maps, const std::vector<BimoduleMap> &ring,
                                           bool precompose) {
  std::vector<std::size_t> gens;
  if (maps.empty())
    return gens;
  const std::size_t ambient = maps[0].matrix().rows() * maps[0].matrix().cols();
  Echelon span(ambient);
  for (std::size_t k = 0; k < maps.size(); ++k) {
    if (span.contains(maps[k].matrix().flatten()))
      continue;
    gens.push_back(k);
    for (const auto &phi : ring) {
      LinMap prod = precompose ? compose(maps[k].matrix(), phi.matrix()) : compose(phi.matrix(), maps[k].matrix());
      span.insert(prod.flatten());
    }
    if (span.rank() == maps.size())
      break;
  }
  return gens;
}

// Concatenated values of h at the given points.
SparseVec evaluate_at(const LinMap &h, const std::vector<SparseVec> &points, std::size_t dim) {
  SparseVec out;
  for (std::size_t s = 0; s < points.size(); ++s)
    out.axpy(Scalar(1), h.apply(points[s]).shifted(static_cast<Index>(s * dim)));
  return out;
}

} // namespace

SummandResult is_direct_summand_of_power(const BimodulePtr &m, const BimodulePtr &n) {
  if (!same_acting_pair(*m, *n))
    throw Error(ErrorKind::DimensionMismatch, "summand test between bimodules over different algebras");
  SummandResult res;
  if (same_bimodule(*m, *n)) {
    SummandWitness w;
    w.N = 1;
    w.f.push_back(identity_map(m));
    w.g.push_back(identity_map(m));
    verify_witness(w, *m);
    res.is_summand = true;
    res.witness = std::move(w);
    return res;
  }
  HomSpace to_n = hom_space(m, n);   // g's
  HomSpace from_n = hom_space(n, m); // f's
  HomSpace end_n = hom_space(n, n);

  // (f o phi) o g = f o (phi o g): generators on one side times a basis on
  // the other already span the trace ideal.
  std::vector<std::size_t> f_gens = module_generators(from_n.basis, end_n.basis, true);
  std::vector<std::size_t> g_gens = module_generators(to_n.basis, end_n.basis, false);
  const bool group_by_f = f_gens.size() * to_n.dim() <= from_n.dim() * g_gens.size();

  const std::vector<SparseVec> &points = m->generators();
  const std::size_t dm = m->dim();
  std::vector<std::vector<SparseVec>> g_vals(to_n.dim());
  for (std::size_t b = 0; b < to_n.dim(); ++b)
    for (const auto &p : points)
      g_vals[b].push_back(to_n.basis[b].apply(p));

  struct Term {
    std::size_t f, g;
  };
  std::vector<Term> terms;
  if (group_by_f) {
    for (auto a : f_gens)
      for (std::size_t b = 0; b < to_n.dim(); ++b)
        terms.push_back({a, b});
  } else {
    for (std::size_t a = 0; a < from_n.dim(); ++a)
      for (auto b : g_gens)
        terms.push_back({a, b});
  }

  LinMap id = LinMap::identity(dm, m->field().one());
  SparseVec target = evaluate_at(id, points, dm);
  TrackedSpan span(points.size() * dm);
  std::size_t used = 0;
  bool found = false;
  for (; used < terms.size(); ++used) {
    const Term &t = terms[used];
    SparseVec v;
    for (std::size_t s = 0; s < points.size(); ++s)
      v.axpy(Scalar(1), from_n.basis[t.f].apply(g_vals[t.g][s]).shifted(static_cast<Index>(s * dm)));
    if (span.insert(v) && span.contains(target)) {
      found = true;
      ++used;
      break;
    }
  }
  res.trace_rank = span.rank();
  if (!found) {
    HomSpace end_m = hom_space(m, m);
    res.defect = end_m.dim() - span.rank();
    return res;
  }

  SparseVec coeffs = *span.express(target);
  // Absorb the coefficients into the side that is not grouped.
  std::vector<std::size_t> keys;
  std::vector<LinMap> partner;
  for (const auto &e : coeffs.entries()) {
    const Term &t = terms[e.index];
    std::size_t key = group_by_f ? t.f : t.g;
    const LinMap &other = group_by_f ? to_n.basis[t.g].matrix() : from_n.basis[t.f].matrix();
    auto it = std::find(keys.begin(), keys.end(), key);
    if (it == keys.end()) {
      keys.push_back(key);
      partner.push_back(other.scaled(e.value));
    } else {
      LinMap &p = partner[static_cast<std::size_t>(it - keys.begin())];
      p = p + other.scaled(e.value);
    }
  }
  SummandWitness w;
  for (std::size_t k = 0; k < keys.size(); ++k) {
    if (partner[k].is_zero())
      continue;
    if (group_by_f) {
      w.f.push_back(from_n.basis[keys[k]]);
      w.g.emplace_back(m, n, std::move(partner[k]));
    } else {
      w.f.emplace_back(n, m, std::move(partner[k]));
      w.g.push_back(to_n.basis[keys[k]]);
    }
  }
  w.N = w.f.size();
  verify_witness(w, *m);
  res.is_summand = true;
  res.witness = std::move(w);
  return res;
}

bool h_equivalent(const BimodulePtr &m, const BimodulePtr &n) {
  return is_direct_summand_of_power(m, n).is_summand && is_direct_summand_of_power(n, m).is_summand;
}

} // namespace d3
