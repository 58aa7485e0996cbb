#include "dsk/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "dsk/la/eig.hpp"
#include "dsk/la/qr.hpp"
#include "dsk/la/svd.hpp"

namespace dsk {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

constexpr double kSpuriousFactor = 1e-2;

// (A - lambda I) x for complex x and real A.
ComplexVector eigen_residual(const SparseMatrix& a, const ComplexVector& x, Complex lambda) {
  const Vector re = spmv(a, Vector(x.real()));
  const Vector im = spmv(a, Vector(x.imag()));
  ComplexVector r(x.size());
  for (Index i = 0; i < x.size(); ++i) r[i] = Complex(re[i], im[i]) - lambda * x[i];
  return r;
}

void fill_diagnostics(SolveReport& rep, const DenseMatrix& v, const DenseMatrix& sv) {
  try {
    const auto d = distortion_report(v, sv);
    rep.sigma_min_sv = d.sigma_min_sv;
    rep.kappa_v = d.kappa_v;
    rep.kappa_whitened = d.kappa_whitened;
  } catch (const RankDeficient&) {
    const auto sig_v = thin_svd(v).sigma;
    rep.kappa_v = sig_v[0] / sig_v[sig_v.size() - 1];
    rep.sigma_min_sv = sv.rows() >= sv.cols() ? thin_svd(sv).sigma[sv.cols() - 1] : 0.0;
    rep.kappa_whitened = std::numeric_limits<double>::infinity();
  }
  rep.unreliable = !(rep.kappa_whitened <= kUnreliableKappa);
}

void set_sketch_info(SolveReport& rep, const SketchOperator& op, Index n) {
  rep.sketch = sketch_tag(op);
  rep.sketch_size = sketch_rows(op, n);
  if (const auto* p = std::get_if<RowSelector>(&op)) rep.selector = *p;
}

// Eigenpairs of the small matrix lifted through v, with residuals and the
// sketched residual bounds.
void lift_pairs(SolveReport& rep, const SparseMatrix& a, const DenseMatrix& v, const EigenPairs& small,
                const SketchOperator& op, double sig_min_w, double sig_max_w) {
  const double anorm = a.frobenius_norm();
  const ComplexMatrix vc = v.cast<Complex>();
  double best = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < small.values.size(); ++i) {
    RitzPair pair;
    pair.value = small.values[i];
    ComplexVector x = vc * small.vectors.col(i);
    const double nx = x.norm();
    if (nx > 0.0) x /= nx;
    pair.vector = x;
    const ComplexVector r = eigen_residual(a, x, pair.value);
    pair.residual = r.norm();
    DenseMatrix parts(r.size(), 2);
    parts.col(0) = r.real();
    parts.col(1) = r.imag();
    pair.sketched_residual = sketch_apply(op, parts).norm();
    pair.bound_low = sig_min_w * pair.sketched_residual;
    pair.bound_high = sig_max_w * pair.sketched_residual;
    pair.spurious = pair.residual > kSpuriousFactor * anorm;
    if (pair.residual < best) {
      best = pair.residual;
      rep.residual = pair.residual;
      rep.bound_low = pair.bound_low;
      rep.bound_high = pair.bound_high;
    }
    rep.pairs.push_back(std::move(pair));
  }
}

Vector zero_if_empty(const Vector& x0, Index n) {
  if (x0.size() == 0) return Vector::Zero(n);
  if (x0.size() != n) throw DimensionMismatch("x0 has wrong length");
  if (!x0.allFinite()) throw InvalidArgument("x0 has non-finite entries");
  return x0;
}

}  // namespace

Strategy parse_strategy(const std::string& name) {
  if (name == "deim") return Strategy::deim;
  if (name == "qdeim") return Strategy::qdeim;
  if (name == "mpe") return Strategy::mpe;
  if (name == "gpode") return Strategy::gpode;
  if (name == "sparsesign") return Strategy::sparsesign;
  if (name == "identity") return Strategy::identity;
  if (name == "random") return Strategy::random;
  throw InvalidArgument("unknown strategy '" + name + "'");
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::deim: return "deim";
    case Strategy::qdeim: return "qdeim";
    case Strategy::mpe: return "mpe";
    case Strategy::gpode: return "gpode";
    case Strategy::sparsesign: return "sparsesign";
    case Strategy::identity: return "identity";
    case Strategy::random: return "random";
  }
  return "?";
}

Index default_sketch_size(Strategy s, Index m, Index n, bool eigenproblem) {
  Index out = m;
  switch (s) {
    case Strategy::deim:
    case Strategy::qdeim: out = m; break;
    case Strategy::mpe: out = eigenproblem ? (3 * m + 1) / 2 : (11 * m + 9) / 10; break;
    case Strategy::gpode: out = eigenproblem ? (3 * m + 1) / 2 : m + 1; break;
    case Strategy::sparsesign:
    case Strategy::random: out = 2 * m; break;
    case Strategy::identity: out = n; break;
  }
  return std::min(out, n);
}

SketchOperator build_sketch(Strategy strategy, const DenseMatrix& v, Index s, std::uint64_t seed) {
  const Index n = v.rows();
  const Index m = v.cols();
  if (s < m) throw InvalidArgument("sketch size " + std::to_string(s) + " is below the basis size " + std::to_string(m));
  if (s > n) throw Exhausted("sketch size exceeds the problem dimension");
  switch (strategy) {
    case Strategy::deim:
    case Strategy::qdeim: {
      if (s != m) throw InvalidArgument(to_string(strategy) + " selects exactly m rows; use mpe or gpode to oversample");
      return strategy == Strategy::deim ? deim(v) : qdeim(v);
    }
    case Strategy::mpe: return oversample(v, deim(v), s, Oversampling::mpe);
    case Strategy::gpode: return oversample(v, qdeim(v), s, Oversampling::gpode);
    case Strategy::sparsesign: return SparseSign{seed, 8, s};
    case Strategy::random: return random_rows(n, s, seed);
    case Strategy::identity: return IdentitySketch{};
  }
  throw InvalidArgument("unknown strategy");
}

SolveReport sketched_fom(const KrylovBasis& basis, const SketchOperator& op, const Vector& b, const MatrixFunction& f) {
  const auto t0 = Clock::now();
  SolveReport rep;
  rep.m_used = basis.m();
  rep.breakdown = basis.breakdown;
  set_sketch_info(rep, op, basis.v.rows());
  const DenseMatrix sv = sketch_apply(op, basis.v);
  const auto qr = thin_qr(sv);
  const DenseMatrix qt_sm = qr.q.transpose() * sketch_apply(op, basis.m_prod);
  const DenseMatrix h = solve_upper_right(qt_sm, qr.r);  // Q^T S A V R^{-1}
  const Vector qt_sb = qr.q.transpose() * sketch_apply(op, b);
  const Vector z = f(h) * qt_sb;
  rep.approximation = basis.v * back_substitute(qr.r, z);
  rep.times.solve = seconds_since(t0);
  fill_diagnostics(rep, basis.v, sv);
  return rep;
}

SolveReport sketched_gmres(const SparseMatrix& a, const KrylovBasis& basis, const SketchOperator& op,
                           const Vector& b, const Vector& x0_in) {
  const auto t0 = Clock::now();
  const Vector x0 = zero_if_empty(x0_in, a.n());
  SolveReport rep;
  rep.m_used = basis.m();
  rep.breakdown = basis.breakdown;
  set_sketch_info(rep, op, basis.v.rows());
  const Vector r0 = b - spmv(a, x0);
  const auto qr = thin_qr(sketch_apply(op, basis.m_prod));
  const Vector y = back_substitute(qr.r, qr.q.transpose() * sketch_apply(op, r0));
  rep.approximation = x0 + basis.v * y;
  rep.times.solve = seconds_since(t0);
  rep.residual = (b - spmv(a, rep.approximation)).norm();
  fill_diagnostics(rep, basis.v, sketch_apply(op, basis.v));
  return rep;
}

SolveReport sketched_rr(const SparseMatrix& a, const KrylovBasis& basis, const SketchOperator& op) {
  const auto t0 = Clock::now();
  SolveReport rep;
  rep.m_used = basis.m();
  rep.breakdown = basis.breakdown;
  set_sketch_info(rep, op, basis.v.rows());
  const DenseMatrix sv = sketch_apply(op, basis.v);
  const auto qr = thin_qr(sv);
  const DenseMatrix small = back_substitute(qr.r, qr.q.transpose() * sketch_apply(op, basis.m_prod));
  const auto eig = dense_eig(small);
  const auto sig_w = thin_svd(solve_upper_right(basis.v, qr.r)).sigma;
  lift_pairs(rep, a, basis.v, eig, op, sig_w[sig_w.size() - 1], sig_w[0]);
  rep.times.solve = seconds_since(t0);
  fill_diagnostics(rep, basis.v, sv);
  return rep;
}

namespace {

struct Prepared {
  KrylovBasis basis;
  SketchOperator op;
  double t_basis = 0;
  double t_select = 0;
};

Prepared prepare(const SparseMatrix& a, const Vector& start, Index m, const SolverOptions& opts, bool eigenproblem) {
  Prepared p;
  auto t0 = Clock::now();
  p.basis = truncated_arnoldi(a, start, m, {opts.k, opts.reorthogonalize});
  p.t_basis = seconds_since(t0);
  const Index used = p.basis.m();
  const Index s = opts.s ? *opts.s : default_sketch_size(opts.strategy, used, a.n(), eigenproblem);
  t0 = Clock::now();
  p.op = build_sketch(opts.strategy, p.basis.v, s, opts.seed);
  p.t_select = seconds_since(t0);
  return p;
}

void stamp(SolveReport& rep, const Prepared& p) {
  rep.times.basis = p.t_basis;
  rep.times.select = p.t_select;
}

}  // namespace

SolveReport dsfom(const SparseMatrix& a, const Vector& b, Index m, const SolverOptions& opts, const MatrixFunction& f) {
  const Prepared p = prepare(a, b, m, opts, false);
  SolveReport rep = sketched_fom(p.basis, p.op, b, f);
  stamp(rep, p);
  return rep;
}

SolveReport dsgmres(const SparseMatrix& a, const Vector& b, const Vector& x0_in, Index m, const SolverOptions& opts) {
  const Vector x0 = zero_if_empty(x0_in, a.n());
  const Vector r0 = b - spmv(a, x0);
  const Prepared p = prepare(a, r0, m, opts, false);
  SolveReport rep = sketched_gmres(a, p.basis, p.op, b, x0);
  stamp(rep, p);
  return rep;
}

SolveReport dsrr(const SparseMatrix& a, const Vector& b, Index m, const SolverOptions& opts) {
  const Prepared p = prepare(a, b, m, opts, true);
  SolveReport rep = sketched_rr(a, p.basis, p.op);
  stamp(rep, p);
  return rep;
}

SolveReport fom_reference(const SparseMatrix& a, const Vector& b, Index m, const MatrixFunction& f) {
  auto t0 = Clock::now();
  const auto arn = full_arnoldi(a, b, m);
  SolveReport rep;
  rep.times.basis = seconds_since(t0);
  t0 = Clock::now();
  const Index used = arn.m();
  rep.m_used = used;
  rep.breakdown = arn.breakdown;
  rep.sketch = "identity";
  rep.sketch_size = a.n();
  const DenseMatrix fh = f(arn.h.topRows(used));
  rep.approximation = arn.v * (fh.col(0) * b.norm());
  rep.times.solve = seconds_since(t0);
  rep.sigma_min_sv = rep.kappa_v = rep.kappa_whitened = 1.0;
  return rep;
}

SolveReport gmres_reference(const SparseMatrix& a, const Vector& b, const Vector& x0_in, Index m) {
  const Vector x0 = zero_if_empty(x0_in, a.n());
  const Vector r0 = b - spmv(a, x0);
  auto t0 = Clock::now();
  const auto arn = full_arnoldi(a, r0, m);
  SolveReport rep;
  rep.times.basis = seconds_since(t0);
  t0 = Clock::now();
  rep.m_used = arn.m();
  rep.breakdown = arn.breakdown;
  rep.sketch = "identity";
  rep.sketch_size = a.n();
  const auto qr = thin_qr(arn.h);
  Vector rhs = Vector::Zero(arn.h.rows());
  rhs[0] = r0.norm();
  const Vector y = back_substitute(qr.r, qr.q.transpose() * rhs);
  rep.approximation = x0 + arn.v * y;
  rep.times.solve = seconds_since(t0);
  rep.residual = (b - spmv(a, rep.approximation)).norm();
  rep.sigma_min_sv = rep.kappa_v = rep.kappa_whitened = 1.0;
  return rep;
}

SolveReport rr_reference(const SparseMatrix& a, const Vector& b, Index m) {
  auto t0 = Clock::now();
  const auto arn = full_arnoldi(a, b, m);
  SolveReport rep;
  rep.times.basis = seconds_since(t0);
  t0 = Clock::now();
  const Index used = arn.m();
  rep.m_used = used;
  rep.breakdown = arn.breakdown;
  rep.sketch = "identity";
  rep.sketch_size = a.n();
  const auto eig = dense_eig(arn.h.topRows(used));
  lift_pairs(rep, a, arn.v, eig, IdentitySketch{}, 1.0, 1.0);
  rep.times.solve = seconds_since(t0);
  rep.sigma_min_sv = rep.kappa_v = rep.kappa_whitened = 1.0;
  return rep;
}

}  // namespace dsk
