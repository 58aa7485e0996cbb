#pragma once

#include <cstdint>
#include <vector>

#include "dsk/core.hpp"

namespace dsk {

/// An ordered set of distinct row indices into [0, n); the sketch it
/// describes is S = I(p, :).
class RowSelector {
 public:
  RowSelector() = default;
  RowSelector(Index n, std::vector<Index> p);

  Index n() const { return n_; }
  Index size() const { return static_cast<Index>(p_.size()); }
  const std::vector<Index>& indices() const { return p_; }
  Index operator[](Index i) const { return p_[static_cast<std::size_t>(i)]; }

  /// x(p, :)
  template <typename Derived>
  Dense<typename Derived::Scalar> gather(const Eigen::MatrixBase<Derived>& x) const {
    if (x.rows() != n_) throw DimensionMismatch("RowSelector: row count mismatch");
    Dense<typename Derived::Scalar> out(size(), x.cols());
    for (Index i = 0; i < size(); ++i) out.row(i) = x.row(p_[static_cast<std::size_t>(i)]);
    return out;
  }

  friend bool operator==(const RowSelector&, const RowSelector&) = default;

 private:
  Index n_ = 0;
  std::vector<Index> p_;
};

/// Greedy DEIM: the first index is argmax |v_0|; step j interpolates column
/// j on the rows chosen so far and picks the row where the interpolation
/// residual is largest. Ties go to the lowest row. Throws
/// SingularInterpolation(j) when the residual of column j vanishes to
/// 1e-14 relative, which means the leading j+1 columns are dependent.
RowSelector deim(const DenseMatrix& v);

/// First m column pivots of a pivoted QR of v^T. Throws RankDeficient(j)
/// when pivot j has exactly zero norm.
RowSelector qdeim(const DenseMatrix& v);

enum class Oversampling { mpe, gpode };

/// Per-step record of an oversampling run.
struct OversampleTrace {
  std::vector<double> sigma_min;  // sigma_min(S V) before every step and after the last one
  std::vector<Index> picks;
};

/// Extends p0 greedily to s rows. Every step recomputes the SVD
/// S V = U diag(sigma) W^T and scores each unused row r of v:
///   mpe:   lambda_min(diag(sigma^2) + g g^T), g = W^T v(r, :)
///   gpode: |v(r, :) w_min|, w_min the right singular vector of sigma_min.
/// The best row is appended; ties go to the lowest row.
RowSelector oversample(const DenseMatrix& v, const RowSelector& p0, Index s, Oversampling rule,
                       OversampleTrace* trace = nullptr);

/// s distinct rows drawn uniformly (partial Fisher-Yates); diagnostic only.
RowSelector random_rows(Index n, Index s, std::uint64_t seed);

}  // namespace dsk
