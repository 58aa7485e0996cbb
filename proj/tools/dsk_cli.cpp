// dsk: experiment driver for the sketched Krylov solvers.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dsk/experiment.hpp"
#include "dsk/io.hpp"
#include "dsk/problems.hpp"

namespace {

// "10,20,30" or "start:stop:step" (inclusive).
std::vector<dsk::Index> parse_m_list(const std::string& text) {
  std::vector<dsk::Index> out;
  if (text.find(':') != std::string::npos) {
    std::stringstream ss(text);
    std::string part;
    std::vector<long long> f;
    while (std::getline(ss, part, ':')) f.push_back(std::stoll(part));
    if (f.size() != 3 || f[2] <= 0) throw dsk::InvalidArgument("m range must be start:stop:step");
    for (long long m = f[0]; m <= f[1]; m += f[2]) out.push_back(m);
    return out;
  }
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    out.push_back(std::stoll(part, &used));
    if (used != part.size()) throw dsk::InvalidArgument("bad m value '" + part + "'");
  }
  return out;
}

std::vector<dsk::Strategy> parse_strategies(const std::string& text) {
  std::vector<dsk::Strategy> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(dsk::parse_strategy(part));
  return out;
}

struct Flags {
  std::string problem = "laplacian2d";
  std::string solver = "dsfom";
  std::string strategy = "gpode";
  std::string m = "10,20,30";
  std::string s = "default";
  std::string out;
  std::string ritz_out;
  std::string graph;
  long long d = 16;
  long long nodes = 2000;
  long long k = 4;
  std::uint64_t seed = 0;
  bool strict_alg1 = false;
  bool timings = false;

  dsk::ExperimentConfig config() const {
    dsk::ExperimentConfig cfg;
    cfg.problem = dsk::parse_problem(problem);
    cfg.solver = dsk::parse_solver(solver);
    cfg.strategies = parse_strategies(strategy);
    cfg.d = d;
    cfg.graph_path = graph;
    cfg.graph_nodes = nodes;
    cfg.m_list = parse_m_list(m);
    cfg.k = k;
    cfg.s = dsk::SizeRule::parse(s);
    cfg.seed = seed;
    cfg.strict_alg1 = strict_alg1;
    cfg.timings = timings;
    return cfg;
  }
};

void add_experiment_flags(CLI::App* app, Flags& f) {
  app->add_option("--problem", f.problem, "laplacian2d | convdiff | graph")->capture_default_str();
  app->add_option("--solver", f.solver, "dsfom | dsgmres | dsrr | fom | gmres | rr")->capture_default_str();
  app->add_option("--strategy", f.strategy, "deim | qdeim | mpe | gpode | sparsesign | identity | random")
      ->capture_default_str();
  app->add_option("--d", f.d, "grid points per dimension")->capture_default_str();
  app->add_option("--m", f.m, "basis sizes: 10,20,30 or start:stop:step")->capture_default_str();
  app->add_option("--k", f.k, "truncation length of the Arnoldi window")->capture_default_str();
  app->add_option("--s", f.s, "sketch size: N, 1.1x, m+1 or default")->capture_default_str();
  app->add_option("--seed", f.seed, "seed for random sketches, generated graphs and start vectors")
      ->capture_default_str();
  app->add_option("--out", f.out, "CSV output path (stdout when omitted)");
  app->add_option("--graph", f.graph, "edge list or .mtx for --problem graph");
  app->add_option("--nodes", f.nodes, "size of the generated graph when --graph is omitted")->capture_default_str();
  app->add_flag("--strict-alg1", f.strict_alg1, "single Gram-Schmidt pass in the truncated Arnoldi window");
  app->add_flag("--timings", f.timings, "fill the wall-time columns (output is then not reproducible)");
}

template <typename Fn>
int with_output(const std::string& path, Fn&& fn) {
  if (path.empty()) return fn(std::cout);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw dsk::InvalidArgument("cannot open '" + path + "' for writing");
  return fn(file);
}

bool is_mtx(const std::string& path) { return path.size() >= 4 && path.substr(path.size() - 4) == ".mtx"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministically sketched Krylov methods: experiment driver"};
  app.require_subcommand(1);

  Flags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "run one solver over a list of basis sizes");
  add_experiment_flags(sweep, sweep_flags);
  sweep->add_option("--ritz-out", sweep_flags.ritz_out, "CSV of every Ritz pair (dsrr / rr)");

  Flags dist_flags;
  auto* distortion = app.add_subcommand("distortion", "subspace distortion of each strategy's sketch");
  add_experiment_flags(distortion, dist_flags);

  std::string conv_in, conv_out;
  auto* convert = app.add_subcommand("convert", "read a Matrix Market file or edge list and write it back");
  convert->add_option("input", conv_in, "input path")->required();
  convert->add_option("output", conv_out, "output path")->required();

  Flags gen_flags;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "write the experiment matrix as Matrix Market");
  generate->add_option("--problem", gen_flags.problem)->capture_default_str();
  generate->add_option("--d", gen_flags.d)->capture_default_str();
  generate->add_option("--graph", gen_flags.graph);
  generate->add_option("--nodes", gen_flags.nodes)->capture_default_str();
  generate->add_option("--seed", gen_flags.seed)->capture_default_str();
  generate->add_option("--out", gen_out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep) {
      const auto cfg = sweep_flags.config();
      std::ofstream ritz;
      if (!sweep_flags.ritz_out.empty()) {
        ritz.open(sweep_flags.ritz_out, std::ios::binary);
        if (!ritz) throw dsk::InvalidArgument("cannot open '" + sweep_flags.ritz_out + "'");
      }
      const int failures =
          with_output(sweep_flags.out, [&](std::ostream& os) { return dsk::run_sweep(cfg, os, ritz ? &ritz : nullptr); });
      return failures == 0 ? 0 : 1;
    }
    if (*distortion) {
      const auto cfg = dist_flags.config();
      const int failures = with_output(dist_flags.out, [&](std::ostream& os) { return dsk::run_distortion(cfg, os); });
      return failures == 0 ? 0 : 1;
    }
    if (*convert) {
      if (is_mtx(conv_in)) {
        dsk::write_matrix_market(conv_out, dsk::read_matrix_market(conv_in));
      } else {
        std::ofstream os(conv_out, std::ios::binary);
        if (!os) throw dsk::InvalidArgument("cannot open '" + conv_out + "'");
        dsk::write_edge_list(os, dsk::read_edge_list(conv_in));
      }
      return 0;
    }
    if (*generate) {
      dsk::ExperimentConfig cfg;
      cfg.problem = dsk::parse_problem(gen_flags.problem);
      cfg.d = gen_flags.d;
      cfg.graph_path = gen_flags.graph;
      cfg.graph_nodes = gen_flags.nodes;
      cfg.seed = gen_flags.seed;
      dsk::write_matrix_market(gen_out, dsk::build_problem(cfg).a);
      return 0;
    }
  } catch (const dsk::Error& e) {
    std::cerr << "dsk: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "dsk: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
