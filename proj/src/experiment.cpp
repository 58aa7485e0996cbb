#include "dsk/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#include "dsk/io.hpp"
#include "dsk/problems.hpp"

namespace dsk {

namespace {

constexpr Index kDenseOracleMax = 1024;

std::string num(double x) {
  if (std::isnan(x)) return "";
  return format_double(x);
}

std::string clean(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
  return s;
}

bool is_sketched(SolverKind s) {
  return s == SolverKind::dsfom || s == SolverKind::dsgmres || s == SolverKind::dsrr;
}

bool is_eigen(SolverKind s) { return s == SolverKind::dsrr || s == SolverKind::rr; }

}  // namespace

ProblemKind parse_problem(const std::string& name) {
  if (name == "laplacian2d") return ProblemKind::laplacian2d;
  if (name == "convdiff") return ProblemKind::convdiff;
  if (name == "graph") return ProblemKind::graph;
  throw InvalidArgument("unknown problem '" + name + "'");
}

SolverKind parse_solver(const std::string& name) {
  if (name == "dsfom") return SolverKind::dsfom;
  if (name == "dsgmres") return SolverKind::dsgmres;
  if (name == "dsrr") return SolverKind::dsrr;
  if (name == "fom") return SolverKind::fom;
  if (name == "gmres") return SolverKind::gmres;
  if (name == "rr") return SolverKind::rr;
  throw InvalidArgument("unknown solver '" + name + "'");
}

SizeRule SizeRule::parse(const std::string& text) {
  SizeRule r;
  if (text.empty() || text == "default") return r;
  try {
    std::size_t used = 0;
    if (text.rfind("m+", 0) == 0) {
      r.kind = Kind::offset;
      r.value = static_cast<double>(std::stoll(text.substr(2), &used));
      if (used != text.size() - 2 || r.value < 0) throw InvalidArgument("");
    } else if (text.back() == 'x') {
      r.kind = Kind::multiple;
      r.value = std::stod(text.substr(0, text.size() - 1), &used);
      if (used != text.size() - 1 || !(r.value >= 1.0)) throw InvalidArgument("");
    } else {
      r.kind = Kind::fixed;
      r.value = static_cast<double>(std::stoll(text, &used));
      if (used != text.size() || r.value < 1) throw InvalidArgument("");
    }
  } catch (const std::exception&) {
    throw InvalidArgument("bad sketch size rule '" + text + "' (expected N, F x or m+N)");
  }
  return r;
}

Index SizeRule::resolve(Index m, Index n, Strategy strategy, bool eigenproblem) const {
  switch (kind) {
    case Kind::fixed: return static_cast<Index>(value);
    case Kind::multiple: return static_cast<Index>(std::ceil(value * double(m) - 1e-9));
    case Kind::offset: return m + static_cast<Index>(value);
    case Kind::strategy_default: return default_sketch_size(strategy, m, n, eigenproblem);
  }
  return m;
}

void ExperimentConfig::validate() const {
  if (m_list.empty()) throw InvalidArgument("m list is empty");
  for (std::size_t i = 0; i < m_list.size(); ++i) {
    if (m_list[i] < 1) throw InvalidArgument("m values must be positive");
    if (i > 0 && m_list[i] <= m_list[i - 1]) throw InvalidArgument("m list must be strictly increasing");
  }
  if (k < 1) throw InvalidArgument("k must be at least 1");
  if (strategies.empty()) throw InvalidArgument("no strategy given");
  if (problem != ProblemKind::graph && d < 2) throw InvalidArgument("d must be at least 2");
}

ExperimentProblem build_problem(const ExperimentConfig& cfg) {
  ExperimentProblem p;
  switch (cfg.problem) {
    case ProblemKind::laplacian2d: {
      auto e = exponential_euler_problem(cfg.d, 1.0 / 40.0);
      p.a = std::move(e.op);
      p.b = std::move(e.b);
      p.solution_rows = e.n;
      break;
    }
    case ProblemKind::convdiff: {
      auto l = implicit_euler_problem(cfg.d, 1e-3);
      p.a = std::move(l.op);
      p.b = std::move(l.b);
      p.solution_rows = p.a.n();
      break;
    }
    case ProblemKind::graph: {
      const auto edges = cfg.graph_path.empty() ? preferential_attachment(cfg.graph_nodes, 3, 1, cfg.seed)
                                                : read_graph(cfg.graph_path);
      p.a = graph_in_laplacian(edges).laplacian;
      Rng rng(cfg.seed);
      p.b = rng.normal_vector(p.a.n());
      p.solution_rows = p.a.n();
      break;
    }
  }
  return p;
}

namespace {

SolveReport solve(const ExperimentConfig& cfg, const ExperimentProblem& p, Index m, Strategy strategy) {
  SolverOptions opts;
  opts.k = cfg.k;
  opts.strategy = strategy;
  opts.seed = cfg.seed;
  opts.reorthogonalize = !cfg.strict_alg1;
  const bool eig = is_eigen(cfg.solver);
  if (cfg.s.kind != SizeRule::Kind::strategy_default || strategy == Strategy::identity)
    opts.s = cfg.s.resolve(m, p.a.n(), strategy, eig);
  switch (cfg.solver) {
    case SolverKind::dsfom: return dsfom(p.a, p.b, m, opts);
    case SolverKind::dsgmres: return dsgmres(p.a, p.b, Vector(), m, opts);
    case SolverKind::dsrr: return dsrr(p.a, p.b, m, opts);
    case SolverKind::fom: return fom_reference(p.a, p.b, m);
    case SolverKind::gmres: return gmres_reference(p.a, p.b, Vector(), m);
    case SolverKind::rr: return rr_reference(p.a, p.b, m);
  }
  throw InvalidArgument("unknown solver");
}

SolveReport reference(const ExperimentConfig& cfg, const ExperimentProblem& p, Index m) {
  switch (cfg.solver) {
    case SolverKind::dsfom:
    case SolverKind::fom: return fom_reference(p.a, p.b, m);
    case SolverKind::dsgmres:
    case SolverKind::gmres: return gmres_reference(p.a, p.b, Vector(), m);
    case SolverKind::dsrr:
    case SolverKind::rr: return rr_reference(p.a, p.b, m);
  }
  throw InvalidArgument("unknown solver");
}

// exp(A) b: dense for small n, otherwise a long reference FOM run.
Vector exp_oracle(const ExperimentConfig& cfg, const ExperimentProblem& p) {
  if (p.a.n() <= kDenseOracleMax) return expm(p.a.to_dense()) * p.b;
  const Index mmax = cfg.m_list.back();
  const Index mref = std::min(p.a.n(), std::max(2 * mmax, mmax + 100));
  return fom_reference(p.a, p.b, mref).approximation;
}

double quantity(const ExperimentConfig& cfg, const ExperimentProblem& p, const SolveReport& r, const Vector& oracle) {
  if (cfg.solver == SolverKind::dsfom || cfg.solver == SolverKind::fom)
    return (r.approximation.head(p.solution_rows) - oracle.head(p.solution_rows)).norm();
  return r.residual;
}

}  // namespace

int run_sweep(const ExperimentConfig& cfg, std::ostream& out, std::ostream* ritz) {
  cfg.validate();
  const ExperimentProblem p = build_problem(cfg);
  const Strategy strategy = cfg.strategies.front();
  const bool fom_like = cfg.solver == SolverKind::dsfom || cfg.solver == SolverKind::fom;
  const Vector oracle = fom_like ? exp_oracle(cfg, p) : Vector();

  out << "m,s,abs_error_or_residual,rel_to_reference,sigma_min_sv,kappa_v,kappa_whitened,"
         "bound_low,bound_high,t_basis,t_select,t_solve,unreliable,error\n";
  if (ritz) *ritz << "m,index,real,imag,residual,sketched_residual,bound_low,bound_high,spurious\n";
  int failures = 0;
  for (Index m : cfg.m_list) {
    try {
      const SolveReport r = solve(cfg, p, m, strategy);
      const double q = quantity(cfg, p, r, oracle);
      double rel = 1.0;
      if (is_sketched(cfg.solver)) rel = q / quantity(cfg, p, reference(cfg, p, m), oracle);
      out << m << ',' << r.sketch_size << ',' << num(q) << ',' << num(rel) << ',' << num(r.sigma_min_sv) << ','
          << num(r.kappa_v) << ',' << num(r.kappa_whitened) << ',' << num(r.bound_low) << ',' << num(r.bound_high)
          << ',';
      if (cfg.timings)
        out << num(r.times.basis) << ',' << num(r.times.select) << ',' << num(r.times.solve) << ',';
      else
        out << ",,,";
      out << (r.unreliable ? "UNRELIABLE" : "") << ',';
      if (r.breakdown) out << "breakdown at column " << *r.breakdown;
      out << '\n';
      if (ritz) {
        for (std::size_t i = 0; i < r.pairs.size(); ++i) {
          const auto& pr = r.pairs[i];
          *ritz << m << ',' << i << ',' << num(pr.value.real()) << ',' << num(pr.value.imag()) << ','
                << num(pr.residual) << ',' << num(pr.sketched_residual) << ',' << num(pr.bound_low) << ','
                << num(pr.bound_high) << ',' << (pr.spurious ? "SPURIOUS" : "") << '\n';
        }
      }
    } catch (const Error& e) {
      ++failures;
      out << m << ",,,,,,,,,,,,," << clean(std::string("m=") + std::to_string(m) + ": " + e.what()) << '\n';
    }
  }
  return failures;
}

int run_distortion(const ExperimentConfig& cfg, std::ostream& out) {
  cfg.validate();
  const ExperimentProblem p = build_problem(cfg);
  out << "m,strategy,s,sigma_min_v,sigma_max_v,sigma_min_sv,sigma_max_sv,kappa_v,kappa_whitened,lower,upper,error\n";
  int failures = 0;
  for (Index m : cfg.m_list) {
    KrylovBasis basis;
    try {
      basis = truncated_arnoldi(p.a, p.b, m, {cfg.k, !cfg.strict_alg1});
    } catch (const Error& e) {
      ++failures;
      out << m << ",,,,,,,,,,," << clean(e.what()) << '\n';
      continue;
    }
    const Index used = basis.m();
    for (Strategy st : cfg.strategies) {
      const Index s = cfg.s.resolve(used, p.a.n(), st, is_eigen(cfg.solver));
      out << m << ',' << to_string(st) << ',' << s << ',';
      try {
        const auto op = build_sketch(st, basis.v, st == Strategy::identity ? p.a.n() : s, cfg.seed);
        const auto d = distortion_report(basis.v, op);
        out << num(d.sigma_min_v) << ',' << num(d.sigma_max_v) << ',' << num(d.sigma_min_sv) << ','
            << num(d.sigma_max_sv) << ',' << num(d.kappa_v) << ',' << num(d.kappa_whitened) << ',' << num(d.lower)
            << ',' << num(d.upper) << ',';
        if (basis.breakdown) out << "breakdown at column " << *basis.breakdown;
        out << '\n';
      } catch (const Error& e) {
        ++failures;
        out << ",,,,,,,," << clean(std::string("m=") + std::to_string(m) + ": " + e.what()) << '\n';
      }
    }
  }
  return failures;
}

}  // namespace dsk
