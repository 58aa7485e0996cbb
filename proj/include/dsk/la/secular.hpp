#pragma once

#include "dsk/core.hpp"

namespace dsk {

/// Smallest eigenvalue of diag(d) + g g^T for d >= 0 sorted nonincreasing.
///
/// Equal diagonal entries are merged by a rotation of g and components with
/// negligible g are deflated; the remaining root of the secular function
/// 1 + sum g_i^2 / (d_i - lambda) is found by monotone Newton steps in the
/// shifted variable lambda - d_min, so small eigenvalues keep full relative
/// accuracy.
double secular_smallest_eig(const Vector& d, const Vector& g);

}  // namespace dsk
