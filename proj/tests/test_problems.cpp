#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dsk/la/eig.hpp"
#include "dsk/la/expm.hpp"
#include "dsk/problems.hpp"

using namespace dsk;

namespace {

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

DenseMatrix tridiag(Index d, double lo, double mid, double up) {
  DenseMatrix t = DenseMatrix::Zero(d, d);
  for (Index i = 0; i < d; ++i) {
    t(i, i) = mid;
    if (i > 0) t(i, i - 1) = lo;
    if (i + 1 < d) t(i, i + 1) = up;
  }
  return t;
}

GridSpec square(Index d) { return GridSpec{d, {{{-1.0, 1.0}, {-1.0, 1.0}}}}; }

}  // namespace

TEST(Laplacian, ConstantsAreInTheNullspace) {
  for (Index d : {2, 3, 7, 16}) {
    const auto l = laplacian_2d_neumann(square(d));
    EXPECT_LE(spmv(l, Vector::Ones(d * d)).cwiseAbs().maxCoeff(), 1e-12) << d;
  }
}

TEST(Laplacian, TwoPointStencil) {
  const auto l = laplacian_2d_neumann(square(2));
  EXPECT_EQ(l.n(), 4);
  EXPECT_DOUBLE_EQ(l.coeff(0, 1), 0.25);
  EXPECT_DOUBLE_EQ(l.coeff(0, 2), 0.25);
  EXPECT_DOUBLE_EQ(l.coeff(0, 0), -0.5);
  EXPECT_EQ(l.coeff(0, 3), 0.0);
}

TEST(Laplacian, GershgorinBound) {
  const auto grid = square(16);
  const auto l = laplacian_2d_neumann(grid);
  const double h = grid.spacing(0);
  const auto e = dense_eig(-l.to_dense());
  EXPECT_LE(e.values[0].real(), 8.0 / (h * h) + 1e-9);
}

TEST(Laplacian, SymmetricAndMatchesKronecker) {
  const Index d = 5;
  const auto grid = square(d);
  const double h = grid.spacing(0);
  DenseMatrix l1 = tridiag(d, 1, -2, 1);
  l1(0, 0) = l1(d - 1, d - 1) = -1;
  const DenseMatrix want = (kron(DenseMatrix::Identity(d, d), l1) + kron(l1, DenseMatrix::Identity(d, d))) / (h * h);
  const DenseMatrix got = laplacian_2d_neumann(grid).to_dense();
  EXPECT_LE((got - want).norm(), 1e-12 * want.norm());
  EXPECT_EQ(got, got.transpose());
}

TEST(LaplacianProperty, NegativeSemidefinite) {
  const auto l = laplacian_2d_neumann(square(9));
  for (int t = 0; t < 100; ++t) {
    Rng rng(300 + t);
    const Vector x = rng.normal_vector(81);
    ASSERT_LE(x.dot(spmv(l, x)), 1e-10 * x.squaredNorm());
  }
}

TEST(ConvectionDiffusion, MatchesKroneckerOracle) {
  const Index d = 2;
  const auto a = convection_diffusion(d, 1.0).to_dense();
  const DenseMatrix lt = tridiag(d, 1, -2, 1), ct = tridiag(d, 1, -1, 0), id = DenseMatrix::Identity(d, d);
  const DenseMatrix want = (kron(lt, id) + kron(id, lt)) / double((d - 1) * (d - 1)) + (kron(ct, id) + kron(id, ct)) / double(d - 1);
  EXPECT_EQ(a, want);
}

TEST(ConvectionDiffusion, LargerGridMatchesKronecker) {
  const Index d = 6;
  const double D = 0.3;
  const auto a = convection_diffusion(d, D).to_dense();
  const DenseMatrix lt = tridiag(d, 1, -2, 1), ct = tridiag(d, 1, -1, 0), id = DenseMatrix::Identity(d, d);
  const DenseMatrix want = D * (kron(lt, id) + kron(id, lt)) / double((d - 1) * (d - 1)) + (kron(ct, id) + kron(id, ct)) / double(d - 1);
  EXPECT_LE((a - want).norm(), 1e-13 * want.norm());
}

TEST(ConvectionDiffusion, Nonsymmetric) {
  for (Index d : {2, 3, 8}) {
    const auto a = convection_diffusion(d, 1e-3).to_dense();
    EXPECT_GT((a - a.transpose()).norm(), 0.0);
  }
}

TEST(ConvectionDiffusion, FieldOfValuesInLeftHalfPlane) {
  const auto a = convection_diffusion(16, 1e-3).to_dense();
  const DenseMatrix sym = 0.5 * (a + a.transpose());
  const auto e = dense_eig(sym);
  double max_re = -1e300;
  for (Index i = 0; i < e.values.size(); ++i) max_re = std::max(max_re, e.values[i].real());
  EXPECT_LE(max_re, 1e-12);
}

TEST(AugmentedOperator, NilpotentExponential) {
  const Index n = 3;
  const SparseMatrix zero = SparseMatrix::from_coo(n, std::vector<Triplet>{});
  Vector g = Vector::Zero(n);
  g[0] = 1;
  const auto aug = augmented_exp_operator(zero, g);
  const DenseMatrix e = expm(aug.to_dense());
  DenseMatrix want = DenseMatrix::Identity(n + 1, n + 1);
  want(0, n) = 1;
  EXPECT_LE((e - want).norm(), 1e-15);
}

TEST(AugmentedOperator, StructureCount) {
  const auto l = laplacian_2d_neumann(square(4));
  Vector g = Vector::Zero(16);
  g[3] = 1;
  g[7] = -2;
  EXPECT_EQ(augmented_exp_operator(l, g).nnz(), l.nnz() + 2);
}

TEST(AugmentedOperator, BlockMultiply) {
  const auto l = laplacian_2d_neumann(square(4));
  Rng rng(4);
  const Vector g = rng.normal_vector(16);
  const Vector x = rng.normal_vector(17);
  const Vector y = spmv(augmented_exp_operator(l, g), x);
  const Vector top = spmv(l, Vector(x.head(16))) + x[16] * g;
  EXPECT_LE((y.head(16) - top).norm(), 1e-13 * top.norm());
  EXPECT_EQ(y[16], 0.0);
}

TEST(GraphLaplacian, TwoCycle) {
  const auto g = graph_in_laplacian({{0, 1}, {1, 0}});
  const DenseMatrix l = g.laplacian.to_dense();
  DenseMatrix want(2, 2);
  want << 1, -1, -1, 1;
  EXPECT_EQ(l, want);
}

TEST(GraphLaplacian, OutwardStarIsEmpty) {
  EXPECT_THROW(graph_in_laplacian({{0, 1}, {0, 2}, {0, 3}}), EmptyGraph);
}

TEST(GraphLaplacian, RemovalCascades) {
  // 5 -> 4 -> 0 and a 3-cycle 0 -> 1 -> 2 -> 0; nodes 5 then 4 go
  const auto g = graph_in_laplacian({{5, 4}, {4, 0}, {0, 1}, {1, 2}, {2, 0}});
  EXPECT_EQ(g.kept_nodes, (std::vector<Index>{0, 1, 2}));
}

TEST(GraphLaplacian, ThreeCycleSpectrum) {
  const auto g = graph_in_laplacian({{0, 1}, {1, 2}, {2, 0}});
  const auto e = dense_eig(g.laplacian.to_dense());
  std::vector<Complex> want;
  for (int k = 0; k < 3; ++k) want.push_back(1.0 - std::polar(1.0, 2 * std::numbers::pi * k / 3));
  for (const auto& w : want) {
    double best = 1e300;
    for (Index i = 0; i < 3; ++i) best = std::min(best, std::abs(e.values[i] - w));
    EXPECT_LE(best, 1e-12);
  }
}

TEST(GraphLaplacian, SelfLoopsAndDuplicatesIgnored) {
  const auto a = graph_in_laplacian({{0, 1}, {1, 0}});
  const auto b = graph_in_laplacian({{0, 1}, {0, 1}, {1, 0}, {1, 1}});
  EXPECT_EQ(a.laplacian, b.laplacian);
}

TEST(GraphLaplacianProperty, SurvivorsHavePositiveInDegree) {
  for (int t = 0; t < 100; ++t) {
    Rng rng(900 + t);
    std::vector<Edge> edges;
    const Index nodes = 5 + Index(rng.below(40));
    for (Index k = 0; k < 2 * nodes; ++k)
      edges.push_back({Index(rng.below(std::uint64_t(nodes))), Index(rng.below(std::uint64_t(nodes)))});
    try {
      const auto g = graph_in_laplacian(edges);
      const Vector y = spmv(g.laplacian, rng.normal_vector(g.laplacian.n()));
      ASSERT_TRUE(y.allFinite());
      for (Index i = 0; i < g.laplacian.n(); ++i) ASSERT_EQ(g.laplacian.coeff(i, i), 1.0);
      // every column has an off-diagonal entry: some surviving node points at it
      const DenseMatrix l = g.laplacian.to_dense();
      for (Index j = 0; j < l.cols(); ++j) ASSERT_LT(l.col(j).sum() - 1.0, 0.0);
    } catch (const EmptyGraph&) {
    }
  }
}

TEST(GridEval, PaperValues) {
  // d = 3 on [-1,1]^2 has the origin at index 4
  EXPECT_DOUBLE_EQ(grid_eval(square(3), GridFunction::gaussian_bump)[4], 0.5);
  const GridSpec unit{3, {{{0.0, 1.0}, {0.0, 1.0}}}};
  const Vector p = grid_eval(unit, GridFunction::polynomial_bump);
  for (Index corner : {0, 2, 6, 8}) EXPECT_DOUBLE_EQ(p[corner], 0.3);
  EXPECT_DOUBLE_EQ(p[4], 16.3);
}

TEST(GridEval, XVariesFastest) {
  const GridSpec unit{4, {{{0.0, 1.0}, {0.0, 1.0}}}};
  const Vector g = grid_eval(unit, GridFunction::gaussian_bump);
  EXPECT_DOUBLE_EQ(g[1], 0.5 * std::exp(-1.0 / 9.0));
}

TEST(PreferentialAttachment, DeterministicAndNonempty) {
  const auto a = preferential_attachment(200, 3, 1, 42);
  const auto b = preferential_attachment(200, 3, 1, 42);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, preferential_attachment(200, 3, 1, 43));
  EXPECT_GT(graph_in_laplacian(a).laplacian.n(), 150);
}
