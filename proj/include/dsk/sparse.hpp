#pragma once

#include <span>
#include <vector>

#include "dsk/core.hpp"

namespace dsk {

struct Triplet {
  Index row;
  Index col;
  double value;
};

/// Square matrix in compressed sparse row form. Column indices are strictly
/// increasing within each row; the object is immutable after assembly.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  /// Assembles from coordinate triplets: duplicates are summed and entries
  /// that are zero after summation are dropped.
  static SparseMatrix from_coo(Index n, std::span<const Triplet> triplets);
  static SparseMatrix identity(Index n);

  Index n() const { return n_; }
  Index nnz() const { return static_cast<Index>(vals_.size()); }
  std::span<const Index> row_ptr() const { return row_ptr_; }
  std::span<const Index> col_idx() const { return col_idx_; }
  std::span<const double> vals() const { return vals_; }

  /// Entry (i, j), zero when not stored.
  double coeff(Index i, Index j) const;
  std::vector<Triplet> triplets() const;
  DenseMatrix to_dense() const;
  double frobenius_norm() const;

 private:
  Index n_ = 0;
  std::vector<Index> row_ptr_{0};
  std::vector<Index> col_idx_;
  std::vector<double> vals_;
};

/// y = a x, accumulating each row in stored order.
Vector spmv(const SparseMatrix& a, const Vector& x);
void spmv(const SparseMatrix& a, const Eigen::Ref<const Vector>& x, Eigen::Ref<Vector> y);

/// Column sums, i.e. a^T 1.
Vector col_sums(const SparseMatrix& a);

/// alpha I + beta a.
SparseMatrix shifted(const SparseMatrix& a, double alpha, double beta);

bool operator==(const SparseMatrix& x, const SparseMatrix& y);

}  // namespace dsk
