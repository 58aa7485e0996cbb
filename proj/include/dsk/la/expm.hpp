#pragma once

#include <functional>

#include "dsk/core.hpp"

namespace dsk {

/// Callback applying a matrix function to a small dense square matrix.
using MatrixFunction = std::function<DenseMatrix(const DenseMatrix&)>;

/// Matrix exponential by scaling and squaring with the degree-13 Padé
/// approximant. Throws Overflow when the result is not representable.
DenseMatrix expm(const DenseMatrix& m_mat);

/// 1-norm (largest absolute column sum).
double norm1(const DenseMatrix& a);

}  // namespace dsk
