#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dsk/sparse.hpp"

namespace dsk {

/// Matrix Market coordinate files (real, integer or pattern; general,
/// symmetric or skew-symmetric on input). Indices are 1-based on disk.
SparseMatrix read_matrix_market(std::istream& in);
SparseMatrix read_matrix_market(const std::string& path);

/// Writes "coordinate real general" with 17 significant digits, so that
/// reading the output back reproduces the matrix bit for bit.
void write_matrix_market(std::ostream& out, const SparseMatrix& a);
void write_matrix_market(const std::string& path, const SparseMatrix& a);

struct Edge {
  Index src;
  Index dst;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// SNAP-style edge list: one "src dst" pair of nonnegative integers per line,
/// blank lines and lines starting with '#' or '%' ignored.
std::vector<Edge> read_edge_list(std::istream& in);
std::vector<Edge> read_edge_list(const std::string& path);
void write_edge_list(std::ostream& out, const std::vector<Edge>& edges);

/// Reads a graph from either format (chosen by the ".mtx" extension); every
/// stored Matrix Market entry (i, j) becomes an edge i -> j.
std::vector<Edge> read_graph(const std::string& path);

/// Shortest decimal form that survives a round trip (at most 17 significant
/// digits, '.' separator, locale independent).
std::string format_double(double x);

}  // namespace dsk
