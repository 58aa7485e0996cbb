#include "dsk/krylov.hpp"

#include <algorithm>

namespace dsk {

namespace {

constexpr double kBreakdownTol = 1e-14;

void check_inputs(const SparseMatrix& a, const Vector& b, Index m) {
  if (b.size() != a.n()) throw DimensionMismatch("arnoldi: b has wrong length");
  if (m < 1 || m > a.n()) throw InvalidArgument("arnoldi: need 1 <= m <= n");
  if (!b.allFinite()) throw InvalidArgument("arnoldi: non-finite b");
  if (b.norm() == 0.0) throw InvalidArgument("arnoldi: b must be nonzero");
}

}  // namespace

KrylovBasis truncated_arnoldi(const SparseMatrix& a, const Vector& b, Index m, ArnoldiOptions opts) {
  check_inputs(a, b, m);
  if (opts.k < 1) throw InvalidArgument("truncated_arnoldi: k must be at least 1");
  const Index n = a.n();
  KrylovBasis out;
  out.k = opts.k;
  out.v.resize(n, m);
  out.m_prod.resize(n, m);
  out.v.col(0) = b / b.norm();
  spmv(a, out.v.col(0), out.m_prod.col(0));

  Index built = 1;
  for (Index j = 1; j < m; ++j) {
    const Index first = std::max<Index>(0, j - opts.k);
    const auto window = out.v.middleCols(first, j - first);
    Vector w = out.m_prod.col(j - 1);
    const double ref = w.norm();
    const int passes = opts.reorthogonalize ? 2 : 1;
    for (int pass = 0; pass < passes; ++pass) {
      const Vector c = window.transpose() * w;
      w.noalias() -= window * c;
    }
    const double nw = w.norm();
    if (!(nw > kBreakdownTol * ref)) {
      out.breakdown = j;
      break;
    }
    out.v.col(j) = w / nw;
    spmv(a, out.v.col(j), out.m_prod.col(j));
    built = j + 1;
  }
  if (built < m) {
    out.v.conservativeResize(n, built);
    out.m_prod.conservativeResize(n, built);
  }
  return out;
}

ArnoldiDecomposition full_arnoldi(const SparseMatrix& a, const Vector& b, Index m) {
  check_inputs(a, b, m);
  const Index n = a.n();
  DenseMatrix v(n, m + 1);
  DenseMatrix h = DenseMatrix::Zero(m + 1, m);
  v.col(0) = b / b.norm();
  ArnoldiDecomposition out;
  Index built = m;
  Vector w(n);
  for (Index j = 0; j < m; ++j) {
    spmv(a, v.col(j), w);
    const double ref = w.norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (Index i = 0; i <= j; ++i) {
        const double c = v.col(i).dot(w);
        h(i, j) += c;
        w -= c * v.col(i);
      }
    }
    const double nw = w.norm();
    if (!(nw > kBreakdownTol * ref)) {
      // invariant subspace: K_{j+1} is A-invariant
      built = j + 1;
      if (j + 1 < m) out.breakdown = j + 1;
      break;
    }
    h(j + 1, j) = nw;
    if (j + 1 <= m) v.col(j + 1) = w / nw;
  }
  out.v = v.leftCols(built);
  out.h = h.topLeftCorner(built + 1, built);
  return out;
}

}  // namespace dsk
