#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "dsk/core.hpp"

namespace dsk {

template <typename Scalar>
struct QrFactors {
  Dense<Scalar> q;  // orthonormal columns
  Dense<Scalar> r;  // upper triangular (upper trapezoidal for pivoted_qr on wide input)
};

template <typename Scalar>
struct PivotedQr {
  QrFactors<Scalar> factors;
  std::vector<Index> permutation;  // a(:, permutation) = q * r
};

namespace detail {

// Householder reflectors packed below the diagonal of `work`, scaled so that
// the leading entry of each reflector is one; R sits on and above the
// diagonal. Reflector j is H_j = I - beta_j v_j v_j^T acting on rows j..n-1.
template <typename Scalar>
struct HouseholderWork {
  Dense<Scalar> work;
  Column<Scalar> beta;
};

// Reflect column j of `work` onto a multiple of e_j and apply the reflector
// to columns j+1..cols-1.
template <typename Scalar>
void householder_step(Dense<Scalar>& work, Column<Scalar>& beta, Index j) {
  const Index n = work.rows();
  const Index cols = work.cols();
  auto x = work.col(j).segment(j, n - j);
  const Scalar alpha = x.norm();
  if (alpha == Scalar(0)) {
    beta[j] = Scalar(0);
    return;
  }
  const Scalar x0 = x[0];
  const Scalar sign = x0 < Scalar(0) ? Scalar(-1) : Scalar(1);
  const Scalar v0 = x0 + sign * alpha;
  // v = x with v[0] replaced by v0, then normalized to v[0] = 1
  x.tail(n - j - 1) /= v0;
  beta[j] = v0 / (sign * alpha);  // = 2 / (v^T v) after normalization
  x[0] = -sign * alpha;
  if (j + 1 < cols && beta[j] != Scalar(0)) {
    auto trailing = work.block(j, j + 1, n - j, cols - j - 1);
    Column<Scalar> v(n - j);
    v[0] = Scalar(1);
    v.tail(n - j - 1) = work.col(j).segment(j + 1, n - j - 1);
    Eigen::Matrix<Scalar, 1, Eigen::Dynamic> w = v.transpose() * trailing;
    trailing.noalias() -= (beta[j] * v) * w;
  }
}

// Accumulate the first `k` columns of Q = H_0 H_1 ... H_{k-1}.
template <typename Scalar>
Dense<Scalar> form_q(const Dense<Scalar>& work, const Column<Scalar>& beta, Index k) {
  const Index n = work.rows();
  Dense<Scalar> q = Dense<Scalar>::Identity(n, k);
  for (Index j = k - 1; j >= 0; --j) {
    if (beta[j] == Scalar(0)) continue;
    Column<Scalar> v(n - j);
    v[0] = Scalar(1);
    v.tail(n - j - 1) = work.col(j).segment(j + 1, n - j - 1);
    auto block = q.block(j, j, n - j, k - j);
    Eigen::Matrix<Scalar, 1, Eigen::Dynamic> w = v.transpose() * block;
    block.noalias() -= (beta[j] * v) * w;
  }
  return q;
}

// Flip signs so that diag(r) >= 0; q*r is unchanged.
template <typename Scalar>
void make_diagonal_nonnegative(QrFactors<Scalar>& f) {
  const Index k = std::min(f.r.rows(), f.r.cols());
  for (Index j = 0; j < k; ++j) {
    if (f.r(j, j) < Scalar(0)) {
      f.r.row(j) *= Scalar(-1);
      f.q.col(j) *= Scalar(-1);
    }
  }
}

// Thin Householder QR without any rank test.
template <typename Scalar>
QrFactors<Scalar> householder_qr(Dense<Scalar> work) {
  const Index n = work.rows();
  const Index m = work.cols();
  Column<Scalar> beta = Column<Scalar>::Zero(m);
  for (Index j = 0; j < m; ++j) householder_step(work, beta, j);
  QrFactors<Scalar> f;
  f.r = work.topRows(m).template triangularView<Eigen::Upper>();
  f.q = form_q(work, beta, m);
  make_diagonal_nonnegative(f);
  (void)n;
  return f;
}

}  // namespace detail

/// Thin QR decomposition a = q r of a tall matrix (rows >= cols) by
/// Householder reflections, normalized so that diag(r) >= 0.
///
/// Throws RankDeficient(j) for the first column j whose diagonal entry
/// |r_jj| does not exceed 1e-14 * ||a||_F.
template <typename Derived>
QrFactors<typename Derived::Scalar> thin_qr(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  static_assert(!Eigen::NumTraits<Scalar>::IsComplex, "thin_qr expects real input");
  if (a.rows() < a.cols()) throw InvalidArgument("thin_qr: matrix must have rows >= cols");
  if (!a.allFinite()) throw InvalidArgument("thin_qr: non-finite entry");
  auto f = detail::householder_qr<Scalar>(a.eval());
  const Scalar tol = Scalar(1e-14) * a.norm();
  for (Index j = 0; j < f.r.cols(); ++j)
    if (std::abs(f.r(j, j)) <= tol) throw RankDeficient(j);
  return f;
}

/// Householder QR with column pivoting: at every step the column with the
/// largest remaining norm is moved to the front, ties going to the lowest
/// column index. Remaining norms are recomputed, not downdated, so the pivot
/// order is exactly the greedy one. Rank deficiency shows up as trailing
/// zero rows of r.
template <typename Derived>
PivotedQr<typename Derived::Scalar> pivoted_qr(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  static_assert(!Eigen::NumTraits<Scalar>::IsComplex, "pivoted_qr expects real input");
  if (!a.allFinite()) throw InvalidArgument("pivoted_qr: non-finite entry");
  const Index rows = a.rows();
  const Index cols = a.cols();
  const Index k = std::min(rows, cols);
  Dense<Scalar> work = a;
  Column<Scalar> beta = Column<Scalar>::Zero(k);
  std::vector<Index> perm(static_cast<std::size_t>(cols));
  for (Index j = 0; j < cols; ++j) perm[static_cast<std::size_t>(j)] = j;

  for (Index j = 0; j < k; ++j) {
    Index best = j;
    Scalar best_norm = Scalar(-1);
    for (Index c = j; c < cols; ++c) {
      const Scalar nrm = work.col(c).segment(j, rows - j).squaredNorm();
      if (nrm > best_norm) {
        best_norm = nrm;
        best = c;
      }
    }
    if (best != j) {
      work.col(j).swap(work.col(best));
      std::swap(perm[static_cast<std::size_t>(j)], perm[static_cast<std::size_t>(best)]);
    }
    detail::householder_step(work, beta, j);
  }

  PivotedQr<Scalar> out;
  out.factors.r = work.topRows(k).template triangularView<Eigen::Upper>();
  out.factors.q = detail::form_q(work, beta, k);
  detail::make_diagonal_nonnegative(out.factors);
  out.permutation = std::move(perm);
  return out;
}

/// Solves r x = b for upper-triangular r, column by column.
template <typename DerivedR, typename DerivedB>
Dense<typename DerivedB::Scalar> back_substitute(const Eigen::MatrixBase<DerivedR>& r,
                                                 const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedB::Scalar;
  const Index m = r.rows();
  if (r.cols() != m || b.rows() != m) throw DimensionMismatch("back_substitute: shape mismatch");
  for (Index i = 0; i < m; ++i)
    if (r(i, i) == typename DerivedR::Scalar(0)) throw SingularTriangular(i);
  Dense<Scalar> x = b;
  for (Index c = 0; c < x.cols(); ++c) {
    for (Index i = m - 1; i >= 0; --i) {
      Scalar acc = x(i, c);
      for (Index j = i + 1; j < m; ++j) acc -= Scalar(r(i, j)) * x(j, c);
      x(i, c) = acc / Scalar(r(i, i));
    }
  }
  return x;
}

/// Solves y r = x for upper-triangular r, i.e. returns x r^{-1}.
template <typename DerivedX, typename DerivedR>
Dense<typename DerivedX::Scalar> solve_upper_right(const Eigen::MatrixBase<DerivedX>& x,
                                                   const Eigen::MatrixBase<DerivedR>& r) {
  using Scalar = typename DerivedX::Scalar;
  const Index m = r.rows();
  if (r.cols() != m || x.cols() != m) throw DimensionMismatch("solve_upper_right: shape mismatch");
  for (Index i = 0; i < m; ++i)
    if (r(i, i) == typename DerivedR::Scalar(0)) throw SingularTriangular(i);
  Dense<Scalar> y = x;
  for (Index j = 0; j < m; ++j) {
    for (Index i = 0; i < j; ++i) y.col(j) -= Scalar(r(i, j)) * y.col(i);
    y.col(j) /= Scalar(r(j, j));
  }
  return y;
}

}  // namespace dsk
