#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dsk/solvers.hpp"

namespace dsk {

enum class ProblemKind { laplacian2d, convdiff, graph };
enum class SolverKind { dsfom, dsgmres, dsrr, fom, gmres, rr };

ProblemKind parse_problem(const std::string& name);
SolverKind parse_solver(const std::string& name);

/// Sketch size as a function of the basis size m: "40" (absolute), "1.5x"
/// (ceil(1.5 m)), "m+3", or "default" for the strategy default.
struct SizeRule {
  enum class Kind { fixed, multiple, offset, strategy_default } kind = Kind::strategy_default;
  double value = 0;

  static SizeRule parse(const std::string& text);
  Index resolve(Index m, Index n, Strategy strategy, bool eigenproblem) const;
};

struct ExperimentConfig {
  ProblemKind problem = ProblemKind::laplacian2d;
  SolverKind solver = SolverKind::dsfom;
  std::vector<Strategy> strategies{Strategy::gpode};
  Index d = 16;
  std::string graph_path;  // graph problem; empty means a generated graph
  Index graph_nodes = 2000;
  std::vector<Index> m_list{10, 20, 30};
  Index k = 4;
  SizeRule s;
  std::uint64_t seed = 0;
  bool strict_alg1 = false;
  bool timings = false;

  /// Throws InvalidArgument on an empty or unsorted m_list and the like.
  void validate() const;
};

/// Matrix, start vector and the number of leading entries that count as
/// the physical solution (the augmented exponential problem appends one).
struct ExperimentProblem {
  SparseMatrix a;
  Vector b;
  Index solution_rows = 0;
};

ExperimentProblem build_problem(const ExperimentConfig& cfg);

/// One CSV row per m. Returns the number of rows that carry an error.
/// When `ritz` is given and the solver is an eigensolver, every Ritz pair is
/// written there as well.
int run_sweep(const ExperimentConfig& cfg, std::ostream& out, std::ostream* ritz = nullptr);

/// One CSV row per (m, strategy) with the distortion report of the sketch.
int run_distortion(const ExperimentConfig& cfg, std::ostream& out);

}  // namespace dsk
