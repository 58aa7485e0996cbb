#include "dsk/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dsk {

SparseMatrix laplacian_2d_neumann(const GridSpec& grid) {
  const Index d = grid.d;
  if (d < 2) throw InvalidArgument("laplacian_2d_neumann: need at least 2 points per dimension");
  const double cx = 1.0 / (grid.spacing(0) * grid.spacing(0));
  const double cy = 1.0 / (grid.spacing(1) * grid.spacing(1));
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(5 * d * d));
  for (Index iy = 0; iy < d; ++iy) {
    for (Index ix = 0; ix < d; ++ix) {
      const Index row = ix + d * iy;
      double diag = 0.0;
      auto couple = [&](Index col, double c) {
        t.push_back({row, col, c});
        diag -= c;
      };
      if (ix > 0) couple(row - 1, cx);
      if (ix + 1 < d) couple(row + 1, cx);
      if (iy > 0) couple(row - d, cy);
      if (iy + 1 < d) couple(row + d, cy);
      t.push_back({row, row, diag});
    }
  }
  return SparseMatrix::from_coo(d * d, t);
}

SparseMatrix convection_diffusion(Index d, double diffusion) {
  if (d < 2) throw InvalidArgument("convection_diffusion: need d >= 2");
  if (!(diffusion > 0.0)) throw InvalidArgument("convection_diffusion: diffusion must be positive");
  const double h = 1.0 / double(d - 1);
  const double dl = diffusion * h * h;
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(7 * d * d));
  for (Index iy = 0; iy < d; ++iy) {
    for (Index ix = 0; ix < d; ++ix) {
      const Index row = ix + d * iy;
      // diffusion: tridiag(1, -2, 1) along each axis
      t.push_back({row, row, -4.0 * dl});
      if (ix > 0) t.push_back({row, row - 1, dl});
      if (ix + 1 < d) t.push_back({row, row + 1, dl});
      if (iy > 0) t.push_back({row, row - d, dl});
      if (iy + 1 < d) t.push_back({row, row + d, dl});
      // convection: tridiag(1, -1, 0), i.e. upwind from the lower neighbour
      t.push_back({row, row, -2.0 * h});
      if (ix > 0) t.push_back({row, row - 1, h});
      if (iy > 0) t.push_back({row, row - d, h});
    }
  }
  return SparseMatrix::from_coo(d * d, t);
}

SparseMatrix augmented_exp_operator(const SparseMatrix& a, const Vector& g_vec) {
  const Index n = a.n();
  if (g_vec.size() != n) throw DimensionMismatch("augmented_exp_operator: g has wrong length");
  std::vector<Triplet> t = a.triplets();
  for (Index i = 0; i < n; ++i)
    if (g_vec[i] != 0.0) t.push_back({i, n, g_vec[i]});
  return SparseMatrix::from_coo(n + 1, t);
}

InLaplacian graph_in_laplacian(const std::vector<Edge>& edges) {
  std::vector<Edge> clean;
  clean.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.src < 0 || e.dst < 0) throw InvalidArgument("graph_in_laplacian: negative node id");
    if (e.src != e.dst) clean.push_back(e);
  }
  std::sort(clean.begin(), clean.end(),
            [](const Edge& x, const Edge& y) { return x.src != y.src ? x.src < y.src : x.dst < y.dst; });
  clean.erase(std::unique(clean.begin(), clean.end()), clean.end());

  // dense relabelling of every node that appears in an edge
  std::vector<Index> ids;
  ids.reserve(2 * clean.size());
  for (const auto& e : clean) {
    ids.push_back(e.src);
    ids.push_back(e.dst);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto label = [&](Index id) { return static_cast<Index>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin()); };
  const Index count = static_cast<Index>(ids.size());

  std::vector<std::vector<Index>> out_adj(static_cast<std::size_t>(count));
  std::vector<Index> indeg(static_cast<std::size_t>(count), 0);
  for (const auto& e : clean) {
    out_adj[static_cast<std::size_t>(label(e.src))].push_back(label(e.dst));
    ++indeg[static_cast<std::size_t>(label(e.dst))];
  }

  // peel zero in-degree nodes until a fixed point is reached
  std::vector<bool> removed(static_cast<std::size_t>(count), false);
  std::vector<Index> queue;
  for (Index v = 0; v < count; ++v)
    if (indeg[static_cast<std::size_t>(v)] == 0) queue.push_back(v);
  while (!queue.empty()) {
    const Index v = queue.back();
    queue.pop_back();
    if (removed[static_cast<std::size_t>(v)]) continue;
    removed[static_cast<std::size_t>(v)] = true;
    for (Index w : out_adj[static_cast<std::size_t>(v)]) {
      if (removed[static_cast<std::size_t>(w)]) continue;
      if (--indeg[static_cast<std::size_t>(w)] == 0) queue.push_back(w);
    }
  }

  InLaplacian out;
  std::vector<Index> row_of(static_cast<std::size_t>(count), -1);
  for (Index v = 0; v < count; ++v) {
    if (!removed[static_cast<std::size_t>(v)]) {
      row_of[static_cast<std::size_t>(v)] = static_cast<Index>(out.kept_nodes.size());
      out.kept_nodes.push_back(ids[static_cast<std::size_t>(v)]);
    }
  }
  const Index n = static_cast<Index>(out.kept_nodes.size());
  if (n == 0) throw EmptyGraph("graph_in_laplacian: no node with positive in-degree survives");

  std::vector<double> scale(static_cast<std::size_t>(count), 0.0);
  for (Index v = 0; v < count; ++v)
    if (!removed[static_cast<std::size_t>(v)]) scale[static_cast<std::size_t>(v)] = 1.0 / std::sqrt(double(indeg[static_cast<std::size_t>(v)]));

  std::vector<Triplet> t;
  t.reserve(clean.size() + static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) t.push_back({i, i, 1.0});
  for (Index v = 0; v < count; ++v) {
    if (removed[static_cast<std::size_t>(v)]) continue;
    for (Index w : out_adj[static_cast<std::size_t>(v)]) {
      if (removed[static_cast<std::size_t>(w)]) continue;
      t.push_back({row_of[static_cast<std::size_t>(v)], row_of[static_cast<std::size_t>(w)],
                   -scale[static_cast<std::size_t>(v)] * scale[static_cast<std::size_t>(w)]});
    }
  }
  out.laplacian = SparseMatrix::from_coo(n, t);
  return out;
}

Vector grid_eval(const GridSpec& grid, GridFunction which) {
  if (grid.d < 2) throw InvalidArgument("grid_eval: need d >= 2");
  const Index d = grid.d;
  Vector out(d * d);
  for (Index iy = 0; iy < d; ++iy) {
    const double y = grid.coordinate(1, iy);
    for (Index ix = 0; ix < d; ++ix) {
      const double x = grid.coordinate(0, ix);
      out[ix + d * iy] = which == GridFunction::gaussian_bump
                             ? 0.5 * std::exp(-x * x) * std::exp(-y * y)
                             : 0.3 + 256.0 * x * y * (1.0 - x) * (1.0 - y);
    }
  }
  return out;
}

std::vector<Edge> preferential_attachment(Index nodes, Index out_per_node, Index in_per_node, std::uint64_t seed) {
  if (nodes < 2) throw InvalidArgument("preferential_attachment: need at least two nodes");
  Rng rng(seed);
  std::vector<Edge> edges;
  // Urns hold one ticket per node plus one per incident edge end.
  std::vector<Index> in_urn{0};
  std::vector<Index> out_urn{0};
  auto draw_distinct = [&](const std::vector<Index>& urn, Index want, Index limit) {
    std::vector<Index> picked;
    want = std::min(want, limit);
    while (static_cast<Index>(picked.size()) < want) {
      const Index v = urn[rng.below(urn.size())];
      if (std::find(picked.begin(), picked.end(), v) == picked.end()) picked.push_back(v);
    }
    return picked;
  };
  for (Index t = 1; t < nodes; ++t) {
    const auto targets = draw_distinct(in_urn, out_per_node, t);
    const auto sources = draw_distinct(out_urn, in_per_node, t);
    for (Index v : targets) {
      edges.push_back({t, v});
      in_urn.push_back(v);
      out_urn.push_back(t);
    }
    for (Index u : sources) {
      edges.push_back({u, t});
      out_urn.push_back(u);
      in_urn.push_back(t);
    }
    in_urn.push_back(t);
    out_urn.push_back(t);
  }
  return edges;
}

ExpEulerProblem exponential_euler_problem(Index d, double diffusion) {
  const GridSpec grid{d, {{{-1.0, 1.0}, {-1.0, 1.0}}}};
  SparseMatrix l = laplacian_2d_neumann(grid);
  std::vector<Triplet> t = l.triplets();
  for (auto& e : t) e.value *= diffusion;
  const SparseMatrix dl = SparseMatrix::from_coo(l.n(), t);
  const Vector u0 = grid_eval(grid, GridFunction::gaussian_bump);
  const Vector g = (0.25 * u0.array() * (1.0 - u0.array())).matrix();
  ExpEulerProblem p;
  p.n = u0.size();
  p.op = augmented_exp_operator(dl, g);
  p.b.resize(p.n + 1);
  p.b.head(p.n) = u0;
  p.b[p.n] = 1.0;
  return p;
}

LinearProblem implicit_euler_problem(Index d, double diffusion) {
  const GridSpec grid{d, {{{0.0, 1.0}, {0.0, 1.0}}}};
  LinearProblem p;
  p.op = shifted(convection_diffusion(d, diffusion), 1.0, -1.0);
  p.b = grid_eval(grid, GridFunction::polynomial_bump);
  return p;
}

}  // namespace dsk
