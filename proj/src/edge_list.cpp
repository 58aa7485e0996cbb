#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "dsk/io.hpp"

namespace dsk {

std::vector<Edge> read_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#' || line[first] == '%') continue;
    std::istringstream fields(line);
    long long src = -1, dst = -1;
    std::string extra;
    if (!(fields >> src >> dst) || (fields >> extra) || src < 0 || dst < 0)
      throw ParseError(lineno, "expected two nonnegative integers: '" + line + "'");
    edges.push_back({static_cast<Index>(src), static_cast<Index>(dst)});
  }
  return edges;
}

std::vector<Edge> read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const std::vector<Edge>& edges) {
  for (const auto& e : edges) out << e.src << ' ' << e.dst << '\n';
}

std::vector<Edge> read_graph(const std::string& path) {
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".mtx") == 0) {
    const SparseMatrix a = read_matrix_market(path);
    std::vector<Edge> edges;
    for (const auto& t : a.triplets()) edges.push_back({t.row, t.col});
    return edges;
  }
  return read_edge_list(path);
}

}  // namespace dsk
