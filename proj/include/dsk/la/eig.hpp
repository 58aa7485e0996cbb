#pragma once

#include "dsk/core.hpp"

namespace dsk {

struct EigenPairs {
  ComplexVector values;   // sorted by descending magnitude
  ComplexMatrix vectors;  // column i is a unit eigenvector for values[i]
};

inline constexpr Index kDenseEigCap = 2000;

/// Eigenvalues and eigenvectors of a real square matrix.
///
/// The matrix is reduced to upper Hessenberg form, eigenvalues come from
/// Francis double-shift QR iteration, and each eigenvector from inverse
/// iteration on the Hessenberg matrix. Ties in magnitude are ordered by
/// descending real part, then descending imaginary part. Each vector is
/// scaled so that its largest-magnitude entry is real and positive.
///
/// Throws NoConvergence when the QR iteration takes more than 50*m steps.
EigenPairs dense_eig(const DenseMatrix& m_mat);

/// Upper Hessenberg reduction m = q h q^T.
struct Hessenberg {
  DenseMatrix h;
  DenseMatrix q;
};
Hessenberg hessenberg(const DenseMatrix& a);

}  // namespace dsk
