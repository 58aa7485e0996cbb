#include "dsk/sketch.hpp"

#include <algorithm>
#include <cmath>

#include "dsk/la/qr.hpp"
#include "dsk/la/svd.hpp"

namespace dsk {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

DenseMatrix apply_sparse_sign(const SparseSign& op, const DenseMatrix& x) {
  if (op.s < 1) throw InvalidArgument("SparseSign: s must be positive");
  if (op.nnz_per_col < 1) throw InvalidArgument("SparseSign: nnz_per_col must be positive");
  const Index n = x.rows();
  const Index nnz = std::min(op.nnz_per_col, op.s);
  const double scale = 1.0 / std::sqrt(double(nnz));
  Rng rng(op.seed);
  DenseMatrix out = DenseMatrix::Zero(op.s, x.cols());
  std::vector<Index> rows(static_cast<std::size_t>(nnz));
  for (Index j = 0; j < n; ++j) {
    for (Index t = 0; t < nnz; ++t) {
      Index r;
      do {
        r = static_cast<Index>(rng.below(static_cast<std::uint64_t>(op.s)));
      } while (std::find(rows.begin(), rows.begin() + t, r) != rows.begin() + t);
      rows[static_cast<std::size_t>(t)] = r;
      const double sign = (rng.next() >> 63) ? -scale : scale;
      out.row(r) += sign * x.row(j);
    }
  }
  return out;
}

}  // namespace

Index sketch_rows(const SketchOperator& op, Index n) {
  return std::visit(overloaded{[](const RowSelector& p) { return p.size(); },
                               [](const SparseSign& s) { return s.s; },
                               [n](const IdentitySketch&) { return n; }},
                    op);
}

std::string sketch_tag(const SketchOperator& op) {
  return std::visit(overloaded{[](const RowSelector&) { return std::string("rows"); },
                               [](const SparseSign&) { return std::string("sparsesign"); },
                               [](const IdentitySketch&) { return std::string("identity"); }},
                    op);
}

DenseMatrix sketch_apply(const SketchOperator& op, const DenseMatrix& x) {
  return std::visit(overloaded{[&](const RowSelector& p) { return p.gather(x); },
                               [&](const SparseSign& s) { return apply_sparse_sign(s, x); },
                               [&](const IdentitySketch&) { return DenseMatrix(x); }},
                    op);
}

Vector sketch_apply(const SketchOperator& op, const Vector& x) {
  const DenseMatrix y = sketch_apply(op, DenseMatrix(x));
  return y.col(0);
}

DistortionReport distortion_report(const DenseMatrix& v, const DenseMatrix& sv) {
  const Index m = v.cols();
  if (sv.cols() != m) throw DimensionMismatch("distortion_report: column count mismatch");
  if (m < 1) throw InvalidArgument("distortion_report: empty basis");
  if (sv.rows() < m) throw RankDeficient(sv.rows());
  const auto qr = thin_qr(sv);
  const auto sig_v = thin_svd(v).sigma;
  const auto sig_sv = thin_svd(sv).sigma;
  const auto sig_w = thin_svd(solve_upper_right(v, qr.r)).sigma;

  DistortionReport d;
  d.sigma_max_v = sig_v[0];
  d.sigma_min_v = sig_v[m - 1];
  d.sigma_max_sv = sig_sv[0];
  d.sigma_min_sv = sig_sv[m - 1];
  d.sigma_max_whitened = sig_w[0];
  d.sigma_min_whitened = sig_w[m - 1];
  d.kappa_v = d.sigma_max_v / d.sigma_min_v;
  d.kappa_whitened = d.sigma_max_whitened / d.sigma_min_whitened;
  d.lower = (d.sigma_min_sv * d.sigma_min_sv) / (d.sigma_max_v * d.sigma_max_v);
  d.upper = (d.sigma_max_sv * d.sigma_max_sv) / (d.sigma_min_v * d.sigma_min_v);
  return d;
}

DistortionReport distortion_report(const DenseMatrix& v, const SketchOperator& op) {
  return distortion_report(v, sketch_apply(op, v));
}

}  // namespace dsk
