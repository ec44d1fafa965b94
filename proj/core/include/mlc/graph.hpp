#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "mlc/dense_matrix.hpp"
#include "mlc/sparse.hpp"

namespace mlc {

using Edge = std::pair<std::size_t, std::size_t>;

/// Simple undirected graph: no loops, no multi-edges, unit weights.
class Graph {
 public:
  Graph() = default;
  /// Normalizes `edges`: orients each pair as (min, max), drops loops and
  /// duplicates. Throws DomainError for indices >= n.
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t n() const { return n_; }
  std::size_t m() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const CsrMatrix& adjacency() const { return adj_; }
  DenseMatrix dense() const { return adj_.to_dense(); }
  std::vector<std::size_t> degrees() const;

  /// Graph with node i renamed perm[i].
  Graph relabel(const std::vector<std::size_t>& perm) const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  CsrMatrix adj_;
};

/// Connected components, each with its nodes (ascending) and the induced
/// subgraph relabelled 0..size-1. Ordered by smallest node.
struct Component {
  std::vector<std::size_t> members;
  Graph graph;
};
std::vector<Component> connected_components(const Graph& g);

struct GraphStats {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<std::size_t> degrees;
  double rho = 0.0;
  std::optional<double> lambda2;
};

/// Matrix Market coordinate input (pattern/real/integer, symmetric/general).
/// n comes from the declared size; general input is symmetrized by union,
/// loops and explicit zeros dropped, weights discarded.
Graph parse_matrix_market(std::istream& in);
Graph parse_matrix_market(std::string_view text);

/// One "i j" pair of non-negative 0-based integers per line, '#' comments.
/// n is one past the largest index seen, or larger if a "# nodes <n>" line
/// says so (written by write_edge_list to keep isolated nodes).
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list(std::string_view text);

/// Pattern-symmetric Matrix Market, lower triangle, 1-based.
void write_matrix_market(std::ostream& out, const Graph& g);
void write_edge_list(std::ostream& out, const Graph& g);

/// Chooses the parser by extension (.mtx = Matrix Market, anything else an
/// edge list).
Graph read_graph(const std::filesystem::path& path);

/// Largest-eigenvalue data. rho comes from power iteration at tol 1e-8 with a
/// Lanczos fallback for tiny spectral gaps; lambda2 from the dense
/// eigensolver when n <= dense_cap and Lanczos otherwise.
GraphStats graph_stats(const Graph& g, std::size_t dense_cap = 1000);

/// Directory holding bundled datasets: $MLC_DATA_DIR or the build-time default.
std::filesystem::path data_dir();

/// Loads <data_dir>/<name>.mtx. Throws Error("dataset not found ...") when
/// the file is missing.
Graph load_dataset(std::string_view name);

}  // namespace mlc
