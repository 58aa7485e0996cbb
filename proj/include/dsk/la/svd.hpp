#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "dsk/la/qr.hpp"

namespace dsk {

template <typename Scalar>
struct SvdFactors {
  Dense<Scalar> u;      // s x m, orthonormal columns
  Column<Scalar> sigma;  // nonincreasing
  Dense<Scalar> w;      // m x m, orthogonal; a = u diag(sigma) w^T
};

inline constexpr int kJacobiSweepCap = 60;

namespace detail {

// One-sided (Hestenes) Jacobi on the columns of g; rotations are
// accumulated into w. Returns false when the sweep cap is hit.
template <typename Scalar>
bool one_sided_jacobi(Dense<Scalar>& g, Dense<Scalar>& w) {
  const Index m = g.cols();
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Scalar tol = eps * std::sqrt(Scalar(g.rows()));
  // columns at rounding level carry no information and would keep rotating
  const Scalar negligible = eps * eps * g.squaredNorm();
  for (int sweep = 0; sweep < kJacobiSweepCap; ++sweep) {
    bool rotated = false;
    for (Index p = 0; p + 1 < m; ++p) {
      for (Index q = p + 1; q < m; ++q) {
        const Scalar alpha = g.col(p).squaredNorm();
        const Scalar beta = g.col(q).squaredNorm();
        const Scalar gamma = g.col(p).dot(g.col(q));
        if (gamma == Scalar(0) || alpha <= negligible || beta <= negligible) continue;
        if (std::abs(gamma) <= tol * std::sqrt(alpha) * std::sqrt(beta)) continue;
        rotated = true;
        const Scalar zeta = (beta - alpha) / (Scalar(2) * gamma);
        const Scalar t = (zeta >= Scalar(0) ? Scalar(1) : Scalar(-1)) /
                         (std::abs(zeta) + std::sqrt(Scalar(1) + zeta * zeta));
        const Scalar c = Scalar(1) / std::sqrt(Scalar(1) + t * t);
        const Scalar s = c * t;
        for (Index i = 0; i < g.rows(); ++i) {
          const Scalar gp = g(i, p);
          const Scalar gq = g(i, q);
          g(i, p) = c * gp - s * gq;
          g(i, q) = s * gp + c * gq;
        }
        for (Index i = 0; i < w.rows(); ++i) {
          const Scalar wp = w(i, p);
          const Scalar wq = w(i, q);
          w(i, p) = c * wp - s * wq;
          w(i, q) = s * wp + c * wq;
        }
      }
    }
    if (!rotated) return true;
  }
  return false;
}

// Replace the listed columns of u by unit vectors orthogonal to all others.
template <typename Scalar>
void complete_orthonormal(Dense<Scalar>& u, const std::vector<bool>& good) {
  const Index s = u.rows();
  std::vector<bool> done = good;
  Index candidate = 0;
  for (Index j = 0; j < u.cols(); ++j) {
    if (done[static_cast<std::size_t>(j)]) continue;
    for (; candidate < s; ++candidate) {
      Column<Scalar> e = Column<Scalar>::Unit(s, candidate);
      for (int pass = 0; pass < 2; ++pass)
        for (Index i = 0; i < u.cols(); ++i)
          if (done[static_cast<std::size_t>(i)]) e -= u.col(i).dot(e) * u.col(i);
      const Scalar nrm = e.norm();
      if (nrm > Scalar(0.5)) {
        u.col(j) = e / nrm;
        done[static_cast<std::size_t>(j)] = true;
        ++candidate;
        break;
      }
    }
  }
}

}  // namespace detail

/// Thin SVD of a tall matrix by one-sided Jacobi. Inputs with more rows than
/// columns are first reduced to their triangular QR factor.
template <typename Derived>
SvdFactors<typename Derived::Scalar> thin_svd(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  static_assert(!Eigen::NumTraits<Scalar>::IsComplex, "thin_svd expects real input");
  const Index s = a.rows();
  const Index m = a.cols();
  if (s < m) throw InvalidArgument("thin_svd: matrix must have rows >= cols");
  if (!a.allFinite()) throw InvalidArgument("thin_svd: non-finite entry");

  Dense<Scalar> q;
  Dense<Scalar> g;
  const bool reduce = s > m;
  if (reduce) {
    auto f = detail::householder_qr<Scalar>(a.eval());
    q = std::move(f.q);
    g = std::move(f.r);
  } else {
    g = a;
  }
  Dense<Scalar> w = Dense<Scalar>::Identity(m, m);
  if (!detail::one_sided_jacobi(g, w))
    throw NoConvergence("thin_svd: one-sided Jacobi exceeded the sweep cap");

  Column<Scalar> norms(m);
  for (Index j = 0; j < m; ++j) norms[j] = g.col(j).norm();
  std::vector<Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Index(0));
  std::stable_sort(order.begin(), order.end(),
                   [&](Index x, Index y) { return norms[x] > norms[y]; });

  SvdFactors<Scalar> out;
  out.sigma.resize(m);
  out.w.resize(m, m);
  Dense<Scalar> ug(g.rows(), m);
  std::vector<bool> good(static_cast<std::size_t>(m), true);
  const Scalar sigma_max = m > 0 ? norms[order[0]] : Scalar(0);
  const Scalar floor = sigma_max * std::numeric_limits<Scalar>::epsilon() * Scalar(std::max(s, m));
  for (Index j = 0; j < m; ++j) {
    const Index src = order[static_cast<std::size_t>(j)];
    out.sigma[j] = norms[src];
    out.w.col(j) = w.col(src);
    if (norms[src] > floor && norms[src] > Scalar(0)) {
      ug.col(j) = g.col(src) / norms[src];
    } else {
      ug.col(j).setZero();
      good[static_cast<std::size_t>(j)] = false;
    }
  }
  detail::complete_orthonormal(ug, good);
  out.u = reduce ? Dense<Scalar>(q * ug) : ug;
  return out;
}

}  // namespace dsk
