#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "d3/scalar.hpp"

namespace d3 {

using Index = std::uint32_t;

struct Entry {
  Index index;
  Scalar value;
};

/// Sparse vector with entries sorted by index and no stored zeros.
class SparseVec {
public:
  SparseVec() = default;
  static SparseVec unit(Index i, const Scalar &one) { SparseVec v; v.entries_.push_back({i, one}); return v; }
  static SparseVec from_dense(std::span<const Scalar> dense);
  /// Entries may be unsorted and contain duplicates; they are summed.
  static SparseVec from_entries(std::vector<Entry> entries);

  const std::vector<Entry> &entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t nnz() const { return entries_.size(); }
  Scalar at(Index i) const;
  Index max_index() const { return entries_.back().index; }

  std::vector<Scalar> to_dense(std::size_t dim, const Scalar &zero) const;

  /// this += a * x
  void axpy(const Scalar &a, const SparseVec &x);
  SparseVec scaled(const Scalar &a) const;
  /// Shift every index by `offset` (used to concatenate blocks).
  SparseVec shifted(Index offset) const;
  void push_back_unchecked(Index i, Scalar v) { entries_.push_back({i, std::move(v)}); }

  friend SparseVec operator+(const SparseVec &a, const SparseVec &b);
  friend SparseVec operator-(const SparseVec &a, const SparseVec &b);
  friend bool operator==(const SparseVec &a, const SparseVec &b);
  friend bool operator!=(const SparseVec &a, const SparseVec &b) { return !(a == b); }

private:
  std::vector<Entry> entries_;
};

/// A linear map k^cols -> k^rows stored as sparse columns (column j is the
/// image of the j-th basis vector).
class LinMap {
public:
  LinMap() = default;
  LinMap(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}
  LinMap(std::size_t rows, std::vector<SparseVec> columns) : rows_(rows), columns_(std::move(columns)) {}
  static LinMap identity(std::size_t n, const Scalar &one);
  static LinMap zero(std::size_t rows, std::size_t cols) { return LinMap(rows, cols); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  const SparseVec &column(std::size_t j) const { return columns_[j]; }
  SparseVec &column(std::size_t j) { return columns_[j]; }
  const std::vector<SparseVec> &columns() const { return columns_; }
  Scalar at(Index r, Index c) const { return columns_[c].at(r); }
  std::size_t nnz() const;

  SparseVec apply(const SparseVec &x) const;
  /// Row-major view: rows()[i] holds (column, value) entries of row i.
  std::vector<SparseVec> row_view() const;
  /// Column-major flattening: index j * rows + i.
  SparseVec flatten() const;
  static LinMap unflatten(const SparseVec &v, std::size_t rows, std::size_t cols);

  LinMap scaled(const Scalar &a) const;
  bool is_zero() const;

  friend LinMap compose(const LinMap &f, const LinMap &g); ///< f after g
  friend LinMap operator+(const LinMap &a, const LinMap &b);
  friend LinMap operator-(const LinMap &a, const LinMap &b);
  friend bool operator==(const LinMap &a, const LinMap &b);
  friend bool operator!=(const LinMap &a, const LinMap &b) { return !(a == b); }

private:
  std::size_t rows_ = 0;
  std::vector<SparseVec> columns_;
};

LinMap compose(const LinMap &f, const LinMap &g);

/// A subspace of k^n with a basis normalised on a set of key coordinates:
/// basis[i] has 1 at keys[i] and 0 at every other key. Coordinates of a member
/// are therefore read off at the keys.
class Subspace {
public:
  Subspace() = default;
  Subspace(std::size_t ambient, std::vector<SparseVec> basis, std::vector<Index> keys);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<SparseVec> &basis() const { return basis_; }
  const std::vector<Index> &keys() const { return keys_; }

  /// Coordinates with respect to basis(); nullopt when v is not a member.
  std::optional<SparseVec> coordinates(const SparseVec &v) const;
  bool contains(const SparseVec &v) const { return coordinates(v).has_value(); }
  SparseVec combine(const SparseVec &coords) const;

private:
  std::size_t ambient_ = 0;
  std::vector<SparseVec> basis_;
  std::vector<Index> keys_;
  std::vector<std::int64_t> key_pos_; // ambient index -> position in keys_, or -1
};

/// Row echelon form in which every row's pivot is its highest column.
/// Rows are normalised to pivot coefficient 1.
class Echelon {
public:
  explicit Echelon(std::size_t ncols) : ncols_(ncols), pivot_row_(ncols, -1) {}

  std::size_t ncols() const { return ncols_; }
  std::size_t rank() const { return rows_.size(); }

  /// Reduces v against the current rows; returns true and stores the
  /// remainder if it is non-zero.
  bool insert(SparseVec v);
  SparseVec reduce(SparseVec v) const;
  bool contains(const SparseVec &v) const { return reduce(v).empty(); }

  /// Brings the rows to reduced row echelon form.
  void make_reduced();
  bool reduced() const { return reduced_; }

  /// Basis of the span of the inserted vectors, keyed on pivots, sorted by pivot.
  Subspace row_space();
  /// Solutions of row . x = 0, keyed on the free columns (requires only that
  /// rows are the homogeneous system; reduction is performed on demand).
  Subspace nullspace();
  std::vector<Index> pivots() const;

private:
  void reduce_in_place(SparseVec &v, Index below, bool skip_pivot_of_self) const;

  std::size_t ncols_;
  std::vector<SparseVec> rows_;
  std::vector<std::int64_t> pivot_row_;
  bool reduced_ = true;
};

/// Basis of { x : row . x = 0 for every row } in k^ncols.
Subspace nullspace(std::size_t ncols, const std::vector<SparseVec> &rows);

/// Span of a family of vectors.
Subspace span_of(std::size_t ambient, const std::vector<SparseVec> &vectors);

/// Solves rows . x = rhs. Returns the solution with every free variable set
/// to zero, or nullopt when inconsistent.
std::optional<SparseVec> solve(std::size_t ncols, const std::vector<SparseVec> &rows,
                               const std::vector<Scalar> &rhs);

std::size_t rank_of(std::size_t ambient, const std::vector<SparseVec> &vectors);

/// Incremental span that remembers how each echelon row was produced from the
/// inserted vectors, so membership can be turned into an explicit linear
/// combination of the originals.
class TrackedSpan {
public:
  explicit TrackedSpan(std::size_t ncols) : ncols_(ncols), pivot_row_(ncols, -1) {}

  std::size_t rank() const { return rows_.size(); }
  std::size_t inserted() const { return n_inserted_; }

  /// Inserts the vector with the next source id (0, 1, 2, ...).
  bool insert(const SparseVec &v);
  bool contains(const SparseVec &v) const;
  /// Coefficients c (indexed by source id) with sum_k c_k v_k = target.
  std::optional<SparseVec> express(const SparseVec &target) const;

private:
  struct Row {
    SparseVec vec;          // normalised, pivot = highest index = 1
    Index source;           // original vector this row came from
    Scalar scale;           // vec * scale = v_source - sum coeff_q * row_q
    std::vector<std::pair<Index, Scalar>> steps;
  };
  SparseVec reduce(SparseVec v, std::vector<std::pair<Index, Scalar>> *steps) const;

  std::size_t ncols_;
  std::vector<Row> rows_;
  std::vector<std::int64_t> pivot_row_;
  Index n_inserted_ = 0;
};

} // namespace d3
