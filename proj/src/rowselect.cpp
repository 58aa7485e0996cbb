#include "dsk/rowselect.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dsk/la/qr.hpp"
#include "dsk/la/secular.hpp"
#include "dsk/la/svd.hpp"

namespace dsk {

RowSelector::RowSelector(Index n, std::vector<Index> p) : n_(n), p_(std::move(p)) {
  if (n < 0) throw InvalidArgument("RowSelector: negative dimension");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (Index i : p_) {
    if (i < 0 || i >= n) throw IndexOutOfRange("RowSelector: index " + std::to_string(i) + " outside [0, n)");
    if (seen[static_cast<std::size_t>(i)]) throw InvalidArgument("RowSelector: repeated index " + std::to_string(i));
    seen[static_cast<std::size_t>(i)] = true;
  }
}

namespace {

// First index of the largest |x_i|.
template <typename Derived>
Index argmax_abs(const Eigen::MatrixBase<Derived>& x) {
  Index best = 0;
  double best_val = -1.0;
  for (Index i = 0; i < x.size(); ++i) {
    const double a = std::abs(x[i]);
    if (a > best_val) {
      best_val = a;
      best = i;
    }
  }
  return best;
}

}  // namespace

RowSelector deim(const DenseMatrix& v) {
  const Index n = v.rows();
  const Index m = v.cols();
  if (m < 1 || m > n) throw InvalidArgument("deim: need 1 <= m <= n");
  if (!v.allFinite()) throw InvalidArgument("deim: non-finite entry");
  constexpr double tol = 1e-14;

  std::vector<Index> p;
  p.reserve(static_cast<std::size_t>(m));
  if (!(v.col(0).cwiseAbs().maxCoeff() > tol * v.col(0).norm()) || v.col(0).norm() == 0.0)
    throw SingularInterpolation(0);
  p.push_back(argmax_abs(v.col(0)));

  DenseMatrix sv(m, m);  // rows p of the leading columns
  sv.row(0) = v.row(p[0]);
  for (Index j = 1; j < m; ++j) {
    const auto basis = v.leftCols(j);
    Vector rhs(j);
    for (Index i = 0; i < j; ++i) rhs[i] = v(p[static_cast<std::size_t>(i)], j);
    const Vector c = sv.topLeftCorner(j, j).partialPivLu().solve(rhs);
    const Vector r = v.col(j) - basis * c;
    if (!r.allFinite() || !(r.cwiseAbs().maxCoeff() > tol * v.col(j).norm())) throw SingularInterpolation(j);
    const Index pj = argmax_abs(r);
    // r vanishes on the chosen rows in exact arithmetic; landing on one again
    // means the interpolation system has lost rank numerically
    if (std::find(p.begin(), p.end(), pj) != p.end()) throw SingularInterpolation(j);
    p.push_back(pj);
    sv.row(j) = v.row(pj);
  }
  return RowSelector(n, std::move(p));
}

RowSelector qdeim(const DenseMatrix& v) {
  const Index n = v.rows();
  const Index m = v.cols();
  if (m < 1 || m > n) throw InvalidArgument("qdeim: need 1 <= m <= n");
  const auto f = pivoted_qr(v.transpose());
  for (Index j = 0; j < m; ++j)
    if (f.factors.r(j, j) == 0.0) throw RankDeficient(j);
  std::vector<Index> p(f.permutation.begin(), f.permutation.begin() + m);
  return RowSelector(n, std::move(p));
}

RowSelector oversample(const DenseMatrix& v, const RowSelector& p0, Index s, Oversampling rule,
                       OversampleTrace* trace) {
  const Index n = v.rows();
  const Index m = v.cols();
  if (p0.n() != n) throw DimensionMismatch("oversample: selector dimension differs from v");
  if (s > n) throw Exhausted("oversample: requested more rows than v has");
  if (p0.size() < m || s < p0.size()) throw InvalidArgument("oversample: need m <= size(p0) <= s");

  std::vector<Index> p = p0.indices();
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (Index i : p) used[static_cast<std::size_t>(i)] = true;
  if (trace) *trace = {};

  for (Index step = p0.size(); step <= s; ++step) {
    DenseMatrix sv(static_cast<Index>(p.size()), m);
    for (Index i = 0; i < sv.rows(); ++i) sv.row(i) = v.row(p[static_cast<std::size_t>(i)]);
    const auto svd = thin_svd(sv);
    if (trace) trace->sigma_min.push_back(svd.sigma[m - 1]);
    if (step == s) break;

    const Vector d = svd.sigma.array().square().matrix();
    Index best = -1;
    double best_score = -1.0;
    if (rule == Oversampling::gpode) {
      const Vector g = v * svd.w.col(m - 1);
      for (Index r = 0; r < n; ++r) {
        if (used[static_cast<std::size_t>(r)]) continue;
        const double score = std::abs(g[r]);
        if (score > best_score) {
          best_score = score;
          best = r;
        }
      }
    } else {
      const DenseMatrix g = v * svd.w;
      for (Index r = 0; r < n; ++r) {
        if (used[static_cast<std::size_t>(r)]) continue;
        const double score = secular_smallest_eig(d, g.row(r).transpose());
        if (score > best_score) {
          best_score = score;
          best = r;
        }
      }
    }
    p.push_back(best);
    used[static_cast<std::size_t>(best)] = true;
    if (trace) trace->picks.push_back(best);
  }
  return RowSelector(n, std::move(p));
}

RowSelector random_rows(Index n, Index s, std::uint64_t seed) {
  if (s > n) throw Exhausted("random_rows: requested more rows than available");
  if (s < 0) throw InvalidArgument("random_rows: negative size");
  Rng rng(seed);
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index(0));
  for (Index i = 0; i < s; ++i) {
    const Index j = i + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  perm.resize(static_cast<std::size_t>(s));
  return RowSelector(n, std::move(perm));
}

}  // namespace dsk
