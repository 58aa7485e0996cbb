#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "dsk/rowselect.hpp"

namespace dsk {

/// Sparse sign embedding with s rows: column j of S holds `nnz_per_col`
/// entries +-1/sqrt(nnz_per_col) in distinct rows, all drawn from `seed`.
/// The pattern depends only on (seed, nnz_per_col, s, n).
struct SparseSign {
  std::uint64_t seed = 0;
  Index nnz_per_col = 8;
  Index s = 0;
};

struct IdentitySketch {};

using SketchOperator = std::variant<RowSelector, SparseSign, IdentitySketch>;

/// Number of rows of S x for an x with n rows.
Index sketch_rows(const SketchOperator& op, Index n);

/// Short label: "rows", "sparsesign" or "identity".
std::string sketch_tag(const SketchOperator& op);

DenseMatrix sketch_apply(const SketchOperator& op, const DenseMatrix& x);
Vector sketch_apply(const SketchOperator& op, const Vector& x);

/// Subspace distortion of S on range(v). Whitening uses R from thin_qr(S v).
struct DistortionReport {
  double sigma_min_v = 0, sigma_max_v = 0;
  double sigma_min_sv = 0, sigma_max_sv = 0;
  double sigma_min_whitened = 0, sigma_max_whitened = 0;  // of v R^{-1}
  double kappa_v = 0;
  double kappa_whitened = 0;
  double lower = 0;  // sigma_min(S v)^2 / sigma_max(v)^2
  double upper = 0;  // sigma_max(S v)^2 / sigma_min(v)^2
};

/// Throws RankDeficient when S v is numerically rank deficient.
DistortionReport distortion_report(const DenseMatrix& v, const SketchOperator& op);

/// The same report when S v has already been formed.
DistortionReport distortion_report(const DenseMatrix& v, const DenseMatrix& sv);

}  // namespace dsk
