#include "dsk/la/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace dsk {

Hessenberg hessenberg(const DenseMatrix& a) {
  const Index n = a.rows();
  if (a.cols() != n) throw DimensionMismatch("hessenberg: matrix must be square");
  Hessenberg out{a, DenseMatrix::Identity(n, n)};
  DenseMatrix& h = out.h;
  for (Index k = 0; k + 2 < n; ++k) {
    const Index len = n - k - 1;
    Vector v = h.col(k).segment(k + 1, len);
    const double alpha = v.norm();
    if (alpha == 0.0) continue;
    const double sign = v[0] < 0.0 ? -1.0 : 1.0;
    v[0] += sign * alpha;
    const double vtv = v.squaredNorm();
    if (vtv == 0.0) continue;
    const double beta = 2.0 / vtv;
    // h <- P h P with P = I - beta v v^T acting on rows/cols k+1..n-1
    auto rows = h.bottomRows(len);
    Eigen::RowVectorXd wr = v.transpose() * rows;
    rows.noalias() -= (beta * v) * wr;
    auto cols = h.rightCols(len);
    Vector wc = cols * v;
    cols.noalias() -= wc * (beta * v.transpose());
    auto qcols = out.q.rightCols(len);
    Vector wq = qcols * v;
    qcols.noalias() -= wq * (beta * v.transpose());
    h.col(k).segment(k + 2, len - 1).setZero();
    h(k + 1, k) = -sign * alpha;
  }
  return out;
}

namespace {

double sign_of(double magnitude, double s) { return s >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude); }

// Francis double-shift QR on an upper Hessenberg matrix (eigenvalues only).
// `a` is overwritten. Follows the classical EISPACK hqr structure.
void francis_eigenvalues(DenseMatrix a, std::vector<double>& wr, std::vector<double>& wi) {
  const Index n = a.rows();
  wr.assign(static_cast<std::size_t>(n), 0.0);
  wi.assign(static_cast<std::size_t>(n), 0.0);
  double anorm = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = std::max<Index>(i - 1, 0); j < n; ++j) anorm += std::abs(a(i, j));

  const long cap = 50L * static_cast<long>(n);
  long total = 0;
  Index nn = n - 1;
  double t = 0.0;
  while (nn >= 0) {
    int its = 0;
    Index l = 0;
    do {
      for (l = nn; l >= 1; --l) {
        double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(a(l, l - 1)) + s == s) {
          a(l, l - 1) = 0.0;
          break;
        }
      }
      double x = a(nn, nn);
      if (l == nn) {
        wr[static_cast<std::size_t>(nn)] = x + t;
        wi[static_cast<std::size_t>(nn)] = 0.0;
        --nn;
      } else {
        double y = a(nn - 1, nn - 1);
        double w = a(nn, nn - 1) * a(nn - 1, nn);
        if (l == nn - 1) {
          const double p = 0.5 * (y - x);
          const double q = p * p + w;
          double z = std::sqrt(std::abs(q));
          x += t;
          const auto i1 = static_cast<std::size_t>(nn - 1);
          const auto i2 = static_cast<std::size_t>(nn);
          if (q >= 0.0) {
            z = p + sign_of(z, p);
            wr[i1] = wr[i2] = x + z;
            if (z != 0.0) wr[i2] = x - w / z;
            wi[i1] = wi[i2] = 0.0;
          } else {
            wr[i1] = wr[i2] = x + p;
            wi[i1] = z;
            wi[i2] = -z;
          }
          nn -= 2;
        } else {
          if (++total > cap) throw NoConvergence("dense_eig: QR iteration exceeded 50*m steps");
          if (its > 0 && its % 10 == 0) {
            // exceptional shift
            t += x;
            for (Index i = 0; i <= nn; ++i) a(i, i) -= x;
            const double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
            y = x = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;
          Index m = nn - 2;
          double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
          for (; m >= l; --m) {
            z = a(m, m);
            r = x - z;
            double s = y - z;
            p = (r * s - w) / a(m + 1, m) + a(m, m + 1);
            q = a(m + 1, m + 1) - z - r - s;
            r = a(m + 2, m + 1);
            s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
            const double v = std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
            if (u + v == v) break;
          }
          for (Index i = m + 2; i <= nn; ++i) {
            a(i, i - 2) = 0.0;
            if (i != m + 2) a(i, i - 3) = 0.0;
          }
          for (Index k = m; k <= nn - 1; ++k) {
            if (k != m) {
              p = a(k, k - 1);
              q = a(k + 1, k - 1);
              r = 0.0;
              if (k != nn - 1) r = a(k + 2, k - 1);
              x = std::abs(p) + std::abs(q) + std::abs(r);
              if (x != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            const double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
            if (s != 0.0) {
              if (k == m) {
                if (l != m) a(k, k - 1) = -a(k, k - 1);
              } else {
                a(k, k - 1) = -s * x;
              }
              p += s;
              x = p / s;
              y = q / s;
              z = r / s;
              q /= p;
              r /= p;
              for (Index j = k; j <= nn; ++j) {
                p = a(k, j) + q * a(k + 1, j);
                if (k != nn - 1) {
                  p += r * a(k + 2, j);
                  a(k + 2, j) -= p * z;
                }
                a(k + 1, j) -= p * y;
                a(k, j) -= p * x;
              }
              const Index mmin = nn < k + 3 ? nn : k + 3;
              for (Index i = l; i <= mmin; ++i) {
                p = x * a(i, k) + y * a(i, k + 1);
                if (k != nn - 1) {
                  p += z * a(i, k + 2);
                  a(i, k + 2) -= p * r;
                }
                a(i, k + 1) -= p * q;
                a(i, k) -= p;
              }
            }
          }
        }
      }
    } while (nn >= 0 && l < nn - 1);
  }
}

// Inverse iteration on (h - lambda I) with a partially pivoted Hessenberg LU.
// Tiny pivots are replaced by eps * ||h||_F, which is what makes the solve
// with an exact eigenvalue well defined.
ComplexVector inverse_iteration(const DenseMatrix& h, Complex lambda) {
  const Index n = h.rows();
  const double hnorm = std::max(h.norm(), std::numeric_limits<double>::min());
  const double tiny = std::numeric_limits<double>::epsilon() * hnorm;

  ComplexMatrix lu = h.cast<Complex>();
  lu.diagonal().array() -= lambda;
  std::vector<bool> swapped(static_cast<std::size_t>(n), false);
  std::vector<Complex> mult(static_cast<std::size_t>(n), Complex(0.0));
  for (Index k = 0; k + 1 < n; ++k) {
    if (std::abs(lu(k + 1, k)) > std::abs(lu(k, k))) {
      lu.row(k).swap(lu.row(k + 1));
      swapped[static_cast<std::size_t>(k)] = true;
    }
    if (std::abs(lu(k, k)) < tiny) lu(k, k) = tiny;
    const Complex l = lu(k + 1, k) / lu(k, k);
    mult[static_cast<std::size_t>(k)] = l;
    lu(k + 1, k) = 0.0;
    if (l != Complex(0.0)) lu.row(k + 1).tail(n - k - 1) -= l * lu.row(k).tail(n - k - 1);
  }
  if (std::abs(lu(n - 1, n - 1)) < tiny) lu(n - 1, n - 1) = tiny;

  auto solve = [&](ComplexVector y) {
    for (Index k = 0; k + 1 < n; ++k) {
      if (swapped[static_cast<std::size_t>(k)]) std::swap(y[k], y[k + 1]);
      y[k + 1] -= mult[static_cast<std::size_t>(k)] * y[k];
    }
    for (Index i = n - 1; i >= 0; --i) {
      Complex acc = y[i];
      for (Index j = i + 1; j < n; ++j) acc -= lu(i, j) * y[j];
      y[i] = acc / lu(i, i);
    }
    return y;
  };

  ComplexVector y = ComplexVector::Constant(n, Complex(1.0 / std::sqrt(double(n)), 0.0));
  const double target = 10.0 * double(n) * std::numeric_limits<double>::epsilon() * hnorm;
  for (int it = 0; it < 5; ++it) {
    ComplexVector z = solve(y);
    const double nz = z.norm();
    if (!(nz > 0.0) || !std::isfinite(nz)) break;
    y = z / nz;
    ComplexVector res = h.cast<Complex>() * y - lambda * y;
    if (res.norm() <= target) break;
  }
  return y;
}

void normalize_phase(Eigen::Ref<ComplexVector> v) {
  const double nrm = v.norm();
  if (nrm == 0.0) return;
  Index imax = 0;
  for (Index i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[imax]) * (1.0 + 1e-12)) imax = i;
  const Complex phase = std::abs(v[imax]) > 0.0 ? std::conj(v[imax]) / std::abs(v[imax]) : Complex(1.0);
  v *= phase / nrm;
  v[imax] = Complex(v[imax].real(), 0.0);
}

}  // namespace

EigenPairs dense_eig(const DenseMatrix& m_mat) {
  const Index n = m_mat.rows();
  if (m_mat.cols() != n) throw DimensionMismatch("dense_eig: matrix must be square");
  if (n > kDenseEigCap) throw InvalidArgument("dense_eig: matrix larger than the supported cap");
  if (!m_mat.allFinite()) throw InvalidArgument("dense_eig: non-finite entry");
  EigenPairs out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  if (n == 0) return out;

  const Hessenberg hq = hessenberg(m_mat);
  std::vector<double> wr, wi;
  francis_eigenvalues(hq.h, wr, wi);

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index(0));
  auto value = [&](Index i) { return Complex(wr[static_cast<std::size_t>(i)], wi[static_cast<std::size_t>(i)]); };
  std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) {
    const Complex a = value(x), b = value(y);
    if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });

  for (Index j = 0; j < n; ++j) {
    const Complex lambda = value(order[static_cast<std::size_t>(j)]);
    out.values[j] = lambda;
    ComplexVector y = inverse_iteration(hq.h, lambda);
    out.vectors.col(j) = hq.q.cast<Complex>() * y;
    normalize_phase(out.vectors.col(j));
  }
  return out;
}

}  // namespace dsk
