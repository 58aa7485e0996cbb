#pragma once

#include <optional>

#include "dsk/sparse.hpp"

namespace dsk {

/// Non-orthogonal Krylov basis from the k-truncated Arnoldi recurrence
/// together with the products m_prod = A v.
struct KrylovBasis {
  DenseMatrix v;       // n x m_used
  DenseMatrix m_prod;  // n x m_used
  Index k = 0;
  /// 0-based index of the column that could not be formed, if any; v then
  /// holds the columns built before it.
  std::optional<Index> breakdown;

  Index m() const { return v.cols(); }
};

struct ArnoldiOptions {
  Index k = 4;
  bool reorthogonalize = true;  // second Gram-Schmidt pass over the window
};

/// Each new column is A v_{j-1} orthogonalized against the previous k
/// columns by classical Gram-Schmidt (plus one repeat pass unless disabled)
/// and normalized. Stops early when the orthogonalized vector has norm at
/// most 1e-14 ||A v_{j-1}||.
KrylovBasis truncated_arnoldi(const SparseMatrix& a, const Vector& b, Index m, ArnoldiOptions opts = {});

/// Full Arnoldi with modified Gram-Schmidt and one reorthogonalization:
/// orthonormal v (n x m_used) and the (m_used + 1) x m_used Hessenberg
/// matrix h with A v = v_ext h. When the process breaks down the extra row
/// of h is zero.
struct ArnoldiDecomposition {
  DenseMatrix v;
  DenseMatrix h;
  std::optional<Index> breakdown;
  Index m() const { return v.cols(); }
};
ArnoldiDecomposition full_arnoldi(const SparseMatrix& a, const Vector& b, Index m);

}  // namespace dsk
