#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dsk/krylov.hpp"
#include "dsk/la/expm.hpp"
#include "dsk/sketch.hpp"

namespace dsk {

/// How the sketch is chosen from the basis V.
///   deim, qdeim       s = m row subsets
///   mpe               deim rows, then MPE oversampling
///   gpode             qdeim rows, then GappyPOD+E oversampling
///   sparsesign        randomized baseline
///   identity          S = I (no sketch)
///   random            uniformly random rows (diagnostic)
enum class Strategy { deim, qdeim, mpe, gpode, sparsesign, identity, random };

Strategy parse_strategy(const std::string& name);
std::string to_string(Strategy s);

/// Default sketch size: m for deim/qdeim, ceil(1.1 m) for mpe, m + 1 for
/// gpode, 2 m for sparsesign and random, n for identity. With
/// `eigenproblem` set, mpe and gpode use ceil(1.5 m). Clamped to n.
Index default_sketch_size(Strategy s, Index m, Index n, bool eigenproblem = false);

SketchOperator build_sketch(Strategy strategy, const DenseMatrix& v, Index s, std::uint64_t seed = 0);

struct SolverOptions {
  Index k = 4;
  Strategy strategy = Strategy::gpode;
  std::optional<Index> s;  // default_sketch_size when empty
  std::uint64_t seed = 0;  // sparsesign and random only
  bool reorthogonalize = true;
};

struct RitzPair {
  Complex value;
  ComplexVector vector;  // unit norm
  double residual = 0;   // ||A x - lambda x||
  double sketched_residual = 0;  // ||S (A x - lambda x)||
  double bound_low = 0;  // sigma_min(V R^{-1}) ||S r||
  double bound_high = 0; // sigma_max(V R^{-1}) ||S r||
  bool spurious = false; // residual > 1e-2 ||A||_F
};

struct PhaseTimes {
  double basis = 0;
  double select = 0;
  double solve = 0;
};

inline constexpr double kUnreliableKappa = 1e8;

struct SolveReport {
  Vector approximation;         // f_m or x_m; empty for eigenproblems
  std::vector<RitzPair> pairs;  // eigenproblems only
  Index m_used = 0;
  std::optional<Index> breakdown;
  std::string sketch;                  // sketch_tag of the operator used
  Index sketch_size = 0;               // rows of S
  std::optional<RowSelector> selector; // row-subset sketches only
  double sigma_min_sv = std::numeric_limits<double>::quiet_NaN();
  double kappa_v = std::numeric_limits<double>::quiet_NaN();
  double kappa_whitened = std::numeric_limits<double>::quiet_NaN();
  /// Linear systems: ||b - A x_m||. Eigenproblems: smallest pair residual.
  double residual = std::numeric_limits<double>::quiet_NaN();
  /// Eigenproblems: bounds of the pair with the smallest residual.
  double bound_low = std::numeric_limits<double>::quiet_NaN();
  double bound_high = std::numeric_limits<double>::quiet_NaN();
  PhaseTimes times;
  bool unreliable = false;  // kappa_whitened > kUnreliableKappa
};

// Sketched solvers on a prebuilt basis and sketch. `basis` spans K_m(A, b)
// (K_m(A, r0) for GMRES).
SolveReport sketched_fom(const KrylovBasis& basis, const SketchOperator& op, const Vector& b,
                         const MatrixFunction& f);
SolveReport sketched_gmres(const SparseMatrix& a, const KrylovBasis& basis, const SketchOperator& op,
                           const Vector& b, const Vector& x0);
SolveReport sketched_rr(const SparseMatrix& a, const KrylovBasis& basis, const SketchOperator& op);

/// f(A) b with f = exp unless given.
SolveReport dsfom(const SparseMatrix& a, const Vector& b, Index m, const SolverOptions& opts,
                  const MatrixFunction& f = expm);
/// A x = b starting from x0 (zero when empty).
SolveReport dsgmres(const SparseMatrix& a, const Vector& b, const Vector& x0, Index m, const SolverOptions& opts);
SolveReport dsrr(const SparseMatrix& a, const Vector& b, Index m, const SolverOptions& opts);

// Unsketched counterparts on an orthonormal Arnoldi basis.
SolveReport fom_reference(const SparseMatrix& a, const Vector& b, Index m, const MatrixFunction& f = expm);
SolveReport gmres_reference(const SparseMatrix& a, const Vector& b, const Vector& x0, Index m);
SolveReport rr_reference(const SparseMatrix& a, const Vector& b, Index m);

}  // namespace dsk
