#include <gtest/gtest.h>

#include <sstream>

#include "dsk/io.hpp"
#include "dsk/sparse.hpp"

using namespace dsk;

namespace {

SparseMatrix random_sparse(Rng& rng, Index n, Index nnz) {
  std::vector<Triplet> t;
  for (Index k = 0; k < nnz; ++k)
    t.push_back({Index(rng.below(std::uint64_t(n))), Index(rng.below(std::uint64_t(n))), rng.normal()});
  return SparseMatrix::from_coo(n, t);
}

SparseMatrix tridiag(Index n) {
  std::vector<Triplet> t;
  for (Index i = 0; i < n; ++i) {
    t.push_back({i, i, -2});
    if (i > 0) t.push_back({i, i - 1, 1});
    if (i + 1 < n) t.push_back({i, i + 1, 1});
  }
  return SparseMatrix::from_coo(n, t);
}

}  // namespace

TEST(FromCoo, DuplicatesAreSummed) {
  const std::vector<Triplet> t{{0, 0, 1}, {0, 0, 2}};
  const auto a = SparseMatrix::from_coo(2, t);
  EXPECT_EQ(a.nnz(), 1);
  EXPECT_EQ(a.coeff(0, 0), 3.0);
}

TEST(FromCoo, RowsAreSorted) {
  const std::vector<Triplet> t{{0, 1, 1}, {0, 0, 1}};
  const auto a = SparseMatrix::from_coo(2, t);
  ASSERT_EQ(a.nnz(), 2);
  EXPECT_EQ(a.col_idx()[0], 0);
  EXPECT_EQ(a.col_idx()[1], 1);
}

TEST(FromCoo, OutOfRangeIndex) {
  const std::vector<Triplet> t{{0, 5, 1}};
  EXPECT_THROW(SparseMatrix::from_coo(2, t), IndexOutOfRange);
}

TEST(FromCoo, CancelledEntriesAreDropped) {
  const std::vector<Triplet> t{{1, 0, 2}, {1, 0, -2}, {0, 1, 1}};
  const auto a = SparseMatrix::from_coo(2, t);
  EXPECT_EQ(a.nnz(), 1);
  EXPECT_EQ(a.row_ptr()[2], 1);
}

TEST(Spmv, IdentityIsNoOp) {
  Rng rng(1);
  const Vector x = rng.normal_vector(5);
  EXPECT_EQ(spmv(SparseMatrix::identity(5), x), x);
}

TEST(Spmv, TridiagonalHandSum) {
  const Vector y = spmv(tridiag(3), Vector::Ones(3));
  EXPECT_EQ(y, (Vector{{-1.0, 0.0, -1.0}}));
}

TEST(Spmv, MatchesDenseOracleExactly) {
  Rng rng(5);
  const auto a = random_sparse(rng, 30, 90);
  const Vector x = rng.normal_vector(30);
  const DenseMatrix d = a.to_dense();
  const Vector y = spmv(a, x);
  // same summation order as a row-by-row dense product over stored entries
  for (Index i = 0; i < 30; ++i) {
    double acc = 0.0;
    for (Index j = 0; j < 30; ++j)
      if (d(i, j) != 0.0) acc += d(i, j) * x[j];
    EXPECT_EQ(y[i], acc);
  }
}

TEST(Spmv, LengthMismatch) { EXPECT_THROW(spmv(SparseMatrix::identity(3), Vector::Ones(2)), DimensionMismatch); }

TEST(SpmvProperty, Linearity) {
  for (int t = 0; t < 100; ++t) {
    Rng rng(100 + t);
    const Index n = 1 + Index(rng.below(40));
    const auto a = random_sparse(rng, n, 3 * n);
    const Vector x = rng.normal_vector(n), y = rng.normal_vector(n);
    const double al = rng.normal(), be = rng.normal();
    const Vector lhs = spmv(a, Vector(al * x + be * y));
    const Vector rhs = al * spmv(a, x) + be * spmv(a, y);
    ASSERT_LE((lhs - rhs).norm(), 1e-13 * std::max(1.0, rhs.norm()));
  }
}

TEST(ColSums, Identity) { EXPECT_EQ(col_sums(SparseMatrix::identity(4)), Vector::Ones(4)); }

TEST(ColSums, SingleEntry) {
  const std::vector<Triplet> t{{0, 1, 5}};
  EXPECT_EQ(col_sums(SparseMatrix::from_coo(2, t)), (Vector{{0.0, 5.0}}));
}

TEST(ColSums, MatchesDenseOracle) {
  Rng rng(9);
  const auto a = random_sparse(rng, 25, 80);
  const Vector want = a.to_dense().colwise().sum().transpose();
  EXPECT_LE((col_sums(a) - want).norm(), 1e-14 * want.norm());
}

TEST(Shifted, AlphaIPlusBetaA) {
  const auto s = shifted(tridiag(3), 1.0, -1.0);
  EXPECT_EQ(s.coeff(0, 0), 3.0);
  EXPECT_EQ(s.coeff(0, 1), -1.0);
}

// ---- Matrix Market and edge lists ----

TEST(MatrixMarket, IdentityRoundTrip) {
  const auto a = SparseMatrix::identity(2);
  std::stringstream ss;
  write_matrix_market(ss, a);
  EXPECT_EQ(read_matrix_market(ss), a);
}

TEST(MatrixMarket, RandomRoundTripIsBitExact) {
  Rng rng(17);
  const auto a = random_sparse(rng, 40, 200);
  std::stringstream ss;
  write_matrix_market(ss, a);
  EXPECT_EQ(read_matrix_market(ss), a);
}

TEST(MatrixMarket, SymmetricIsExpanded) {
  std::stringstream ss(
      "%%MatrixMarket matrix coordinate real symmetric\n% comment\n2 2 2\n1 1 4\n2 1 -1\n");
  const auto a = read_matrix_market(ss);
  EXPECT_EQ(a.coeff(0, 1), -1.0);
  EXPECT_EQ(a.coeff(1, 0), -1.0);
  EXPECT_EQ(a.coeff(0, 0), 4.0);
}

TEST(MatrixMarket, PatternEntriesAreOne) {
  std::stringstream ss("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 2\n");
  EXPECT_EQ(read_matrix_market(ss).coeff(0, 1), 1.0);
}

TEST(MatrixMarket, BadEntryReportsLine) {
  std::stringstream ss("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n1 x 2\n");
  try {
    read_matrix_market(ss);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(EdgeList, CommentsAreIgnored) {
  std::stringstream ss("# SNAP header\n# more\n0 1\n\n% other comment\n1 2\n");
  const auto e = read_edge_list(ss);
  ASSERT_EQ(e.size(), 2u);
  EXPECT_EQ(e[1], (Edge{1, 2}));
}

TEST(EdgeList, MalformedLine) {
  std::stringstream ss("0 1\na b c d\n");
  try {
    read_edge_list(ss);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(EdgeList, RoundTrip) {
  const std::vector<Edge> edges{{0, 3}, {3, 1}, {2, 2}};
  std::stringstream ss;
  write_edge_list(ss, edges);
  EXPECT_EQ(read_edge_list(ss), edges);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0), "1");
  const double x = 1.0 / 3.0;
  EXPECT_EQ(std::stod(format_double(x)), x);
}
