#include "dsk/sparse.hpp"

#include <algorithm>
#include <cmath>

namespace dsk {

SparseMatrix SparseMatrix::from_coo(Index n, std::span<const Triplet> triplets) {
  if (n < 0) throw InvalidArgument("from_coo: negative dimension");
  for (const auto& t : triplets) {
    if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n)
      throw IndexOutOfRange("from_coo: entry (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                            ") outside a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    if (!std::isfinite(t.value)) throw InvalidArgument("from_coo: non-finite value");
  }
  std::vector<Triplet> sorted(triplets.begin(), triplets.end());
  // Stable so that duplicates are summed in input order.
  std::stable_sort(sorted.begin(), sorted.end(), [](const Triplet& x, const Triplet& y) {
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  });

  SparseMatrix a;
  a.n_ = n;
  a.row_ptr_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    double sum = 0.0;
    while (j < sorted.size() && sorted[j].row == sorted[i].row && sorted[j].col == sorted[i].col) {
      sum += sorted[j].value;
      ++j;
    }
    if (sum != 0.0) {
      a.col_idx_.push_back(sorted[i].col);
      a.vals_.push_back(sum);
      ++a.row_ptr_[static_cast<std::size_t>(sorted[i].row) + 1];
    }
    i = j;
  }
  for (std::size_t r = 0; r < static_cast<std::size_t>(n); ++r) a.row_ptr_[r + 1] += a.row_ptr_[r];
  return a;
}

SparseMatrix SparseMatrix::identity(Index n) {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) t.push_back({i, i, 1.0});
  return from_coo(n, t);
}

double SparseMatrix::coeff(Index i, Index j) const {
  const auto begin = col_idx_.begin() + row_ptr_[static_cast<std::size_t>(i)];
  const auto end = col_idx_.begin() + row_ptr_[static_cast<std::size_t>(i) + 1];
  const auto it = std::lower_bound(begin, end, j);
  return (it != end && *it == j) ? vals_[static_cast<std::size_t>(it - col_idx_.begin())] : 0.0;
}

std::vector<Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(vals_.size());
  for (Index i = 0; i < n_; ++i)
    for (Index p = row_ptr_[static_cast<std::size_t>(i)]; p < row_ptr_[static_cast<std::size_t>(i) + 1]; ++p)
      out.push_back({i, col_idx_[static_cast<std::size_t>(p)], vals_[static_cast<std::size_t>(p)]});
  return out;
}

DenseMatrix SparseMatrix::to_dense() const {
  DenseMatrix d = DenseMatrix::Zero(n_, n_);
  for (const auto& t : triplets()) d(t.row, t.col) = t.value;
  return d;
}

double SparseMatrix::frobenius_norm() const {
  double acc = 0.0;
  for (double v : vals_) acc += v * v;
  return std::sqrt(acc);
}

void spmv(const SparseMatrix& a, const Eigen::Ref<const Vector>& x, Eigen::Ref<Vector> y) {
  if (x.size() != a.n() || y.size() != a.n()) throw DimensionMismatch("spmv: vector length does not match matrix");
  const auto rp = a.row_ptr();
  const auto ci = a.col_idx();
  const auto v = a.vals();
  for (Index i = 0; i < a.n(); ++i) {
    double acc = 0.0;
    for (Index p = rp[static_cast<std::size_t>(i)]; p < rp[static_cast<std::size_t>(i) + 1]; ++p)
      acc += v[static_cast<std::size_t>(p)] * x[ci[static_cast<std::size_t>(p)]];
    y[i] = acc;
  }
}

Vector spmv(const SparseMatrix& a, const Vector& x) {
  if (x.size() != a.n()) throw DimensionMismatch("spmv: vector length does not match matrix");
  Vector y(a.n());
  spmv(a, x, y);
  return y;
}

Vector col_sums(const SparseMatrix& a) {
  Vector s = Vector::Zero(a.n());
  const auto ci = a.col_idx();
  const auto v = a.vals();
  for (std::size_t p = 0; p < v.size(); ++p) s[ci[p]] += v[p];
  return s;
}

SparseMatrix shifted(const SparseMatrix& a, double alpha, double beta) {
  std::vector<Triplet> t = a.triplets();
  for (auto& e : t) e.value *= beta;
  for (Index i = 0; i < a.n(); ++i) t.push_back({i, i, alpha});
  return SparseMatrix::from_coo(a.n(), t);
}

bool operator==(const SparseMatrix& x, const SparseMatrix& y) {
  return x.n() == y.n() && std::ranges::equal(x.row_ptr(), y.row_ptr()) &&
         std::ranges::equal(x.col_idx(), y.col_idx()) && std::ranges::equal(x.vals(), y.vals());
}

}  // namespace dsk
