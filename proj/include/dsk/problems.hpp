#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "dsk/io.hpp"
#include "dsk/sparse.hpp"

namespace dsk {

/// Equispaced tensor grid with `d` points per dimension. Grid vectors are
/// ordered with x varying fastest: index = ix + d * iy.
struct GridSpec {
  Index d = 2;
  std::array<std::pair<double, double>, 2> domain{{{-1.0, 1.0}, {-1.0, 1.0}}};

  double spacing(int dim) const { return (domain[dim].second - domain[dim].first) / double(d - 1); }
  double coordinate(int dim, Index i) const { return domain[dim].first + double(i) * spacing(dim); }
};

/// 5-point finite-difference Laplacian with homogeneous Neumann boundary:
/// missing neighbours are dropped, so rows sum to zero. Scaled by 1/h^2.
SparseMatrix laplacian_2d_neumann(const GridSpec& grid);

/// diffusion/(d-1)^2 (T (x) I + I (x) T) + 1/(d-1) (C (x) I + I (x) C) with
/// T = tridiag(1, -2, 1) and C = tridiag(1, -1, 0) of order d.
SparseMatrix convection_diffusion(Index d, double diffusion);

/// [[a, g], [0, 0]] of order n + 1.
SparseMatrix augmented_exp_operator(const SparseMatrix& a, const Vector& g_vec);

struct InLaplacian {
  SparseMatrix laplacian;
  std::vector<Index> kept_nodes;  // original node id of every row
};

/// Normalized in-degree Laplacian I - D_in^{-1/2} A D_in^{-1/2} of an
/// unweighted directed graph, A(i, j) = 1 for an edge i -> j. Self-loops are
/// dropped and duplicate edges collapsed; nodes with zero in-degree are
/// removed repeatedly until none remain. Throws EmptyGraph if nothing
/// survives.
InLaplacian graph_in_laplacian(const std::vector<Edge>& edges);

enum class GridFunction { gaussian_bump, polynomial_bump };

/// gaussian_bump: exp(-x^2) exp(-y^2) / 2; polynomial_bump:
/// 0.3 + 256 x y (1 - x) (1 - y).
Vector grid_eval(const GridSpec& grid, GridFunction which);

/// Directed preferential-attachment graph: every new node sends
/// `out_per_node` edges to existing nodes drawn proportionally to in-degree
/// + 1 and receives `in_per_node` edges from existing nodes drawn
/// proportionally to out-degree + 1.
std::vector<Edge> preferential_attachment(Index nodes, Index out_per_node, Index in_per_node, std::uint64_t seed);

/// One exponential-Euler step (unit step size) for u' = D L u + u (1 - u) / 4
/// with a Gaussian initial state: exp(op) b carries the step in its first n
/// entries.
struct ExpEulerProblem {
  SparseMatrix op;  // augmented operator of order n + 1
  Vector b;         // [u0; 1]
  Index n = 0;      // grid size d^2
};
ExpEulerProblem exponential_euler_problem(Index d, double diffusion);

/// One implicit-Euler step (unit step size) for u' = A u with the
/// convection-diffusion operator: (I - A) x = u0.
struct LinearProblem {
  SparseMatrix op;
  Vector b;
};
LinearProblem implicit_euler_problem(Index d, double diffusion);

}  // namespace dsk
