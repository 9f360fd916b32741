#include "d3/linalg.hpp"

#include <algorithm>
#include <limits>

#include "d3/error.hpp"

namespace d3 {

// ---------------------------------------------------------------- SparseVec

SparseVec SparseVec::from_dense(std::span<const Scalar> dense) {
  SparseVec v;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (!dense[i].is_zero())
      v.entries_.push_back({static_cast<Index>(i), dense[i]});
  return v;
}

SparseVec SparseVec::from_entries(std::vector<Entry> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry &a, const Entry &b) { return a.index < b.index; });
  SparseVec v;
  for (auto &e : entries) {
    if (!v.entries_.empty() && v.entries_.back().index == e.index) {
      v.entries_.back().value += e.value;
      if (v.entries_.back().value.is_zero())
        v.entries_.pop_back();
    } else if (!e.value.is_zero()) {
      v.entries_.push_back(std::move(e));
    }
  }
  return v;
}

Scalar SparseVec::at(Index i) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                             [](const Entry &e, Index k) { return e.index < k; });
  if (it != entries_.end() && it->index == i)
    return it->value;
  return Scalar(0);
}

std::vector<Scalar> SparseVec::to_dense(std::size_t dim, const Scalar &zero) const {
  std::vector<Scalar> out(dim, zero);
  for (const auto &e : entries_)
    out[e.index] = e.value;
  return out;
}

void SparseVec::axpy(const Scalar &a, const SparseVec &x) {
  if (a.is_zero() || x.entries_.empty())
    return;
  if (entries_.empty()) {
    *this = x.scaled(a);
    return;
  }
  std::vector<Entry> out;
  out.reserve(entries_.size() + x.entries_.size());
  auto i = entries_.begin(), ie = entries_.end();
  auto j = x.entries_.begin(), je = x.entries_.end();
  while (i != ie || j != je) {
    if (j == je || (i != ie && i->index < j->index)) {
      out.push_back(std::move(*i));
      ++i;
    } else if (i == ie || j->index < i->index) {
      out.push_back({j->index, a * j->value});
      ++j;
    } else {
      Scalar s = i->value + a * j->value;
      if (!s.is_zero())
        out.push_back({i->index, std::move(s)});
      ++i;
      ++j;
    }
  }
  entries_ = std::move(out);
}

SparseVec SparseVec::scaled(const Scalar &a) const {
  SparseVec v;
  if (a.is_zero())
    return v;
  v.entries_.reserve(entries_.size());
  for (const auto &e : entries_)
    v.entries_.push_back({e.index, a * e.value});
  return v;
}

SparseVec SparseVec::shifted(Index offset) const {
  SparseVec v = *this;
  for (auto &e : v.entries_)
    e.index += offset;
  return v;
}

SparseVec operator+(const SparseVec &a, const SparseVec &b) {
  SparseVec r = a;
  r.axpy(Scalar(1), b);
  return r;
}

SparseVec operator-(const SparseVec &a, const SparseVec &b) {
  SparseVec r = a;
  r.axpy(Scalar(-1), b);
  return r;
}

bool operator==(const SparseVec &a, const SparseVec &b) {
  if (a.entries_.size() != b.entries_.size())
    return false;
  for (std::size_t k = 0; k < a.entries_.size(); ++k)
    if (a.entries_[k].index != b.entries_[k].index || a.entries_[k].value != b.entries_[k].value)
      return false;
  return true;
}

// ---------------------------------------------------------------- LinMap

LinMap LinMap::identity(std::size_t n, const Scalar &one) {
  LinMap m(n, n);
  for (std::size_t j = 0; j < n; ++j)
    m.columns_[j] = SparseVec::unit(static_cast<Index>(j), one);
  return m;
}

std::size_t LinMap::nnz() const {
  std::size_t n = 0;
  for (const auto &c : columns_)
    n += c.nnz();
  return n;
}

SparseVec LinMap::apply(const SparseVec &x) const {
  SparseVec out;
  for (const auto &e : x.entries())
    out.axpy(e.value, columns_[e.index]);
  return out;
}

std::vector<SparseVec> LinMap::row_view() const {
  std::vector<SparseVec> rows(rows_);
  for (std::size_t j = 0; j < columns_.size(); ++j)
    for (const auto &e : columns_[j].entries())
      rows[e.index].push_back_unchecked(static_cast<Index>(j), e.value);
  return rows;
}

SparseVec LinMap::flatten() const {
  SparseVec v;
  for (std::size_t j = 0; j < columns_.size(); ++j)
    for (const auto &e : columns_[j].entries())
      v.push_back_unchecked(static_cast<Index>(j * rows_ + e.index), e.value);
  return v;
}

LinMap LinMap::unflatten(const SparseVec &v, std::size_t rows, std::size_t cols) {
  LinMap m(rows, cols);
  for (const auto &e : v.entries())
    m.columns_[e.index / rows].push_back_unchecked(static_cast<Index>(e.index % rows), e.value);
  return m;
}

LinMap LinMap::scaled(const Scalar &a) const {
  LinMap m(rows_, columns_.size());
  for (std::size_t j = 0; j < columns_.size(); ++j)
    m.columns_[j] = columns_[j].scaled(a);
  return m;
}

bool LinMap::is_zero() const {
  return std::all_of(columns_.begin(), columns_.end(), [](const SparseVec &c) { return c.empty(); });
}

LinMap compose(const LinMap &f, const LinMap &g) {
  if (f.cols() != g.rows())
    throw Error(ErrorKind::DimensionMismatch, "compose: inner dimensions differ");
  LinMap h(f.rows(), g.cols());
  for (std::size_t j = 0; j < g.cols(); ++j)
    h.columns_[j] = f.apply(g.columns_[j]);
  return h;
}

LinMap operator+(const LinMap &a, const LinMap &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::DimensionMismatch, "sum of maps of different shapes");
  LinMap m = a;
  for (std::size_t j = 0; j < a.cols(); ++j)
    m.columns_[j].axpy(Scalar(1), b.columns_[j]);
  return m;
}

LinMap operator-(const LinMap &a, const LinMap &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::DimensionMismatch, "difference of maps of different shapes");
  LinMap m = a;
  for (std::size_t j = 0; j < a.cols(); ++j)
    m.columns_[j].axpy(Scalar(-1), b.columns_[j]);
  return m;
}

bool operator==(const LinMap &a, const LinMap &b) {
  return a.rows_ == b.rows_ && a.columns_ == b.columns_;
}

// ---------------------------------------------------------------- Subspace

Subspace::Subspace(std::size_t ambient, std::vector<SparseVec> basis, std::vector<Index> keys)
    : ambient_(ambient), basis_(std::move(basis)), keys_(std::move(keys)), key_pos_(ambient, -1) {
  for (std::size_t k = 0; k < keys_.size(); ++k)
    key_pos_[keys_[k]] = static_cast<std::int64_t>(k);
}

std::optional<SparseVec> Subspace::coordinates(const SparseVec &v) const {
  std::vector<Entry> coords;
  for (const auto &e : v.entries())
    if (key_pos_[e.index] >= 0)
      coords.push_back({static_cast<Index>(key_pos_[e.index]), e.value});
  SparseVec c = SparseVec::from_entries(std::move(coords));
  if (combine(c) != v)
    return std::nullopt;
  return c;
}

SparseVec Subspace::combine(const SparseVec &coords) const {
  SparseVec out;
  for (const auto &e : coords.entries())
    out.axpy(e.value, basis_[e.index]);
  return out;
}

// ---------------------------------------------------------------- Echelon

void Echelon::reduce_in_place(SparseVec &v, Index below, bool) const {
  Index limit = below;
  while (!v.empty()) {
    const auto &ent = v.entries();
    auto it = std::lower_bound(ent.begin(), ent.end(), limit,
                               [](const Entry &e, Index k) { return e.index < k; });
    std::int64_t pos = static_cast<std::int64_t>(it - ent.begin()) - 1;
    while (pos >= 0 && pivot_row_[ent[pos].index] < 0)
      --pos;
    if (pos < 0)
      return;
    Index c = ent[pos].index;
    Scalar coeff = ent[pos].value;
    v.axpy(-coeff, rows_[pivot_row_[c]]);
    limit = c;
  }
}

SparseVec Echelon::reduce(SparseVec v) const {
  reduce_in_place(v, std::numeric_limits<Index>::max(), false);
  return v;
}

bool Echelon::insert(SparseVec v) {
  reduce_in_place(v, std::numeric_limits<Index>::max(), false);
  if (v.empty())
    return false;
  Index p = v.max_index();
  Scalar lead = v.entries().back().value;
  if (!lead.is_one())
    v = v.scaled(lead.inverse());
  pivot_row_[p] = static_cast<std::int64_t>(rows_.size());
  rows_.push_back(std::move(v));
  reduced_ = rows_.size() == 1 && reduced_;
  return true;
}

std::vector<Index> Echelon::pivots() const {
  std::vector<Index> p;
  for (std::size_t c = 0; c < ncols_; ++c)
    if (pivot_row_[c] >= 0)
      p.push_back(static_cast<Index>(c));
  return p;
}

void Echelon::make_reduced() {
  if (reduced_)
    return;
  for (Index c : pivots()) {
    SparseVec &row = rows_[pivot_row_[c]];
    reduce_in_place(row, c, true);
  }
  reduced_ = true;
}

Subspace Echelon::row_space() {
  make_reduced();
  std::vector<SparseVec> basis;
  std::vector<Index> keys = pivots();
  for (Index c : keys)
    basis.push_back(rows_[pivot_row_[c]]);
  return Subspace(ncols_, std::move(basis), std::move(keys));
}

Subspace Echelon::nullspace() {
  make_reduced();
  std::vector<std::int64_t> free_pos(ncols_, -1);
  std::vector<Index> keys;
  for (std::size_t c = 0; c < ncols_; ++c)
    if (pivot_row_[c] < 0) {
      free_pos[c] = static_cast<std::int64_t>(keys.size());
      keys.push_back(static_cast<Index>(c));
    }
  std::vector<std::vector<Entry>> parts(keys.size());
  Scalar one(1);
  if (!rows_.empty() && rows_[0].entries()[0].value.is_modular())
    one = Scalar::modular(1, rows_[0].entries()[0].value.modulus());
  for (std::size_t k = 0; k < keys.size(); ++k)
    parts[k].push_back({keys[k], one});
  for (const auto &row : rows_) {
    Index p = row.max_index();
    for (const auto &e : row.entries())
      if (e.index != p)
        parts[free_pos[e.index]].push_back({p, -e.value});
  }
  std::vector<SparseVec> basis;
  basis.reserve(keys.size());
  for (auto &part : parts)
    basis.push_back(SparseVec::from_entries(std::move(part)));
  return Subspace(ncols_, std::move(basis), std::move(keys));
}

Subspace nullspace(std::size_t ncols, const std::vector<SparseVec> &rows) {
  Echelon ech(ncols);
  for (const auto &r : rows)
    ech.insert(r);
  return ech.nullspace();
}

Subspace span_of(std::size_t ambient, const std::vector<SparseVec> &vectors) {
  Echelon ech(ambient);
  for (const auto &v : vectors)
    ech.insert(v);
  return ech.row_space();
}

std::size_t rank_of(std::size_t ambient, const std::vector<SparseVec> &vectors) {
  Echelon ech(ambient);
  for (const auto &v : vectors)
    ech.insert(v);
  return ech.rank();
}

std::optional<SparseVec> solve(std::size_t ncols, const std::vector<SparseVec> &rows,
                               const std::vector<Scalar> &rhs) {
  // Augmented column 0 holds -rhs and the unknowns sit at 1..ncols; pivots are
  // highest columns, so a row reduced to column 0 alone reads 0 = nonzero.
  Echelon ech(ncols + 1);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    SparseVec row = rows[r].shifted(1);
    if (!rhs[r].is_zero())
      row = row + SparseVec::unit(0, -rhs[r]);
    ech.insert(std::move(row));
  }
  for (Index p : ech.pivots())
    if (p == 0)
      return std::nullopt;
  ech.make_reduced();
  Subspace rs = ech.row_space();
  std::vector<Entry> sol;
  for (std::size_t k = 0; k < rs.dim(); ++k) {
    Scalar b = rs.basis()[k].at(0);
    if (!b.is_zero())
      sol.push_back({rs.keys()[k] - 1, -b});
  }
  return SparseVec::from_entries(std::move(sol));
}

// ---------------------------------------------------------------- TrackedSpan

SparseVec TrackedSpan::reduce(SparseVec v, std::vector<std::pair<Index, Scalar>> *steps) const {
  Index limit = std::numeric_limits<Index>::max();
  while (!v.empty()) {
    const auto &ent = v.entries();
    auto it = std::lower_bound(ent.begin(), ent.end(), limit,
                               [](const Entry &e, Index k) { return e.index < k; });
    std::int64_t pos = static_cast<std::int64_t>(it - ent.begin()) - 1;
    while (pos >= 0 && pivot_row_[ent[pos].index] < 0)
      --pos;
    if (pos < 0)
      break;
    Index c = ent[pos].index;
    Scalar coeff = ent[pos].value;
    auto rid = pivot_row_[c];
    if (steps)
      steps->push_back({static_cast<Index>(rid), coeff});
    v.axpy(-coeff, rows_[rid].vec);
    limit = c;
  }
  return v;
}

bool TrackedSpan::insert(const SparseVec &v) {
  Index src = n_inserted_++;
  std::vector<std::pair<Index, Scalar>> steps;
  SparseVec r = reduce(v, &steps);
  if (r.empty())
    return false;
  Index p = r.max_index();
  Scalar lead = r.entries().back().value;
  Row row{r.scaled(lead.inverse()), src, lead, std::move(steps)};
  pivot_row_[p] = static_cast<std::int64_t>(rows_.size());
  rows_.push_back(std::move(row));
  return true;
}

bool TrackedSpan::contains(const SparseVec &v) const { return reduce(v, nullptr).empty(); }

std::optional<SparseVec> TrackedSpan::express(const SparseVec &target) const {
  std::vector<std::pair<Index, Scalar>> steps;
  if (!reduce(target, &steps).empty())
    return std::nullopt;
  std::vector<Scalar> x(rows_.size(), Scalar(0));
  for (auto &[rid, c] : steps)
    x[rid] += c;
  std::vector<Entry> out;
  for (std::size_t id = rows_.size(); id-- > 0;) {
    if (x[id].is_zero())
      continue;
    const Row &row = rows_[id];
    Scalar w = x[id] / row.scale;
    out.push_back({row.source, w});
    for (const auto &[q, b] : row.steps)
      x[q] -= w * b;
  }
  return SparseVec::from_entries(std::move(out));
}

} // namespace d3
