#include "mlc/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "mlc/error.hpp"
#include "mlc/linalg.hpp"
#include "mlc/matfun.hpp"

#ifndef MLC_DEFAULT_DATA_DIR
#define MLC_DEFAULT_DATA_DIR "data"
#endif

namespace mlc {
namespace {

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

long long parse_int(std::string_view tok, std::size_t line_no) {
  long long v = 0;
  const auto* first = tok.data();
  const auto* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) throw ParseError("expected an integer, got '" + std::string(tok) + "'", line_no);
  return v;
}

double parse_real(std::string_view tok, std::size_t line_no) {
  const std::string s(tok);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw ParseError("expected a number, got '" + s + "'", line_no);
  return v;
}

bool blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

}  // namespace

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n) {
  for (auto& [i, j] : edges) {
    if (i >= n || j >= n) throw DomainError("Graph: node index out of range");
    if (i > j) std::swap(i, j);
  }
  std::erase_if(edges, [](const Edge& e) { return e.first == e.second; });
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);

  std::vector<Edge> coords;
  coords.reserve(2 * edges_.size());
  for (const auto& [i, j] : edges_) {
    coords.emplace_back(i, j);
    coords.emplace_back(j, i);
  }
  adj_ = CsrMatrix::pattern(n_, coords);
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> d(n_, 0);
  for (const auto& [i, j] : edges_) {
    ++d[i];
    ++d[j];
  }
  return d;
}

Graph Graph::relabel(const std::vector<std::size_t>& perm) const {
  if (perm.size() != n_) throw DomainError("Graph::relabel: permutation has wrong length");
  std::vector<Edge> e;
  e.reserve(edges_.size());
  for (const auto& [i, j] : edges_) e.emplace_back(perm[i], perm[j]);
  return Graph(n_, std::move(e));
}

std::vector<Component> connected_components(const Graph& g) {
  const auto& rp = g.adjacency().row_ptr();
  const auto& ci = g.adjacency().col_idx();
  constexpr auto unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> label(g.n(), unset), local(g.n(), 0);
  std::vector<Component> out;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < g.n(); ++s) {
    if (label[s] != unset) continue;
    label[s] = out.size();
    stack.push_back(s);
    std::vector<std::size_t> members;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      members.push_back(u);
      for (std::size_t k = rp[u]; k < rp[u + 1]; ++k) {
        if (label[ci[k]] == unset) {
          label[ci[k]] = out.size();
          stack.push_back(ci[k]);
        }
      }
    }
    std::sort(members.begin(), members.end());
    for (std::size_t k = 0; k < members.size(); ++k) local[members[k]] = k;
    out.push_back({std::move(members), Graph()});
  }
  std::vector<std::vector<Edge>> edges(out.size());
  for (const auto& [i, j] : g.edges()) edges[label[i]].emplace_back(local[i], local[j]);
  for (std::size_t c = 0; c < out.size(); ++c) out[c].graph = Graph(out[c].members.size(), std::move(edges[c]));
  return out;
}

Graph parse_matrix_market(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError("empty input", 0);
  ++line_no;
  const auto head = tokens(line);
  if (head.size() < 5 || lower(head[0]) != "%%matrixmarket" || lower(head[1]) != "matrix" ||
      lower(head[2]) != "coordinate") {
    throw ParseError("header must start with '%%MatrixMarket matrix coordinate'", line_no);
  }
  const std::string field = lower(head[3]);
  const std::string symmetry = lower(head[4]);
  if (field != "pattern" && field != "real" && field != "integer") {
    throw ParseError("unsupported field '" + std::string(head[3]) + "'", line_no);
  }
  if (symmetry != "symmetric" && symmetry != "general") {
    throw ParseError("unsupported symmetry '" + std::string(head[4]) + "'", line_no);
  }
  const bool has_value = field != "pattern";

  long long rows = -1, cols = -1, nnz = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line) || line[line.find_first_not_of(" \t")] == '%') continue;
    const auto t = tokens(line);
    if (t.size() != 3) throw ParseError("size line must have three integers", line_no);
    rows = parse_int(t[0], line_no);
    cols = parse_int(t[1], line_no);
    nnz = parse_int(t[2], line_no);
    break;
  }
  if (rows < 0) throw ParseError("missing size line", line_no);
  if (rows != cols) throw ParseError("matrix is not square (" + std::to_string(rows) + " x " + std::to_string(cols) + ")", line_no);
  if (nnz < 0) throw ParseError("negative entry count", line_no);

  const auto n = static_cast<std::size_t>(rows);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(nnz));
  long long seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line) || line[line.find_first_not_of(" \t")] == '%') continue;
    const auto t = tokens(line);
    if (t.size() != (has_value ? 3u : 2u)) throw ParseError("malformed entry line", line_no);
    if (seen == nnz) throw ParseError("more entries than declared", line_no);
    ++seen;
    const long long i = parse_int(t[0], line_no);
    const long long j = parse_int(t[1], line_no);
    if (i < 1 || j < 1 || i > rows || j > cols) {
      throw ParseError("index (" + std::to_string(i) + ", " + std::to_string(j) + ") outside declared bounds", line_no);
    }
    if (has_value && parse_real(t[2], line_no) == 0.0) continue;
    edges.emplace_back(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
  }
  if (seen != nnz) {
    throw ParseError("expected " + std::to_string(nnz) + " entries, found " + std::to_string(seen), line_no);
  }
  return Graph(n, std::move(edges));
}

Graph parse_matrix_market(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_matrix_market(in);
}

Graph parse_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<Edge> edges;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const auto t = tokens(line);
    if (t[0].front() == '#') {
      if (t.size() == 3 && t[0] == "#" && t[1] == "nodes") {
        const long long declared = parse_int(t[2], line_no);
        if (declared < 0) throw ParseError("negative node count", line_no);
        n = std::max(n, static_cast<std::size_t>(declared));
      }
      continue;
    }
    if (t.size() != 2) throw ParseError("expected 'i j'", line_no);
    const long long i = parse_int(t[0], line_no);
    const long long j = parse_int(t[1], line_no);
    if (i < 0 || j < 0) throw ParseError("negative node index", line_no);
    edges.emplace_back(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    n = std::max({n, static_cast<std::size_t>(i) + 1, static_cast<std::size_t>(j) + 1});
  }
  return Graph(n, std::move(edges));
}

Graph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in);
}

void write_matrix_market(std::ostream& out, const Graph& g) {
  out << "%%MatrixMarket matrix coordinate pattern symmetric\n";
  out << g.n() << ' ' << g.n() << ' ' << g.m() << '\n';
  for (const auto& [i, j] : g.edges()) out << j + 1 << ' ' << i + 1 << '\n';
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# nodes " << g.n() << '\n';
  for (const auto& [i, j] : g.edges()) out << i << ' ' << j << '\n';
}

Graph read_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file '" + path.string() + "'");
  if (lower(path.extension().string()) == ".mtx") return parse_matrix_market(in);
  return parse_edge_list(in);
}

GraphStats graph_stats(const Graph& g, std::size_t dense_cap) {
  GraphStats s;
  s.n = g.n();
  s.m = g.m();
  s.degrees = g.degrees();
  if (g.n() == 0) throw DomainError("graph_stats: empty graph");
  try {
    s.rho = spectral_radius(g.adjacency(), 1e-8);
  } catch (const ConvergenceError&) {
    s.rho = lanczos_largest(g.adjacency(), 1, 1e-10).front();
  }
  if (g.n() >= 2) {
    if (g.n() <= dense_cap) {
      const Vector ev = sym_eigvals(g.dense());
      s.lambda2 = ev[ev.size() - 2];
    } else {
      try {
        s.lambda2 = lanczos_largest(g.adjacency(), 2, 1e-10)[1];
      } catch (const ConvergenceError&) {
        s.lambda2.reset();
      }
    }
  }
  return s;
}

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("MLC_DATA_DIR"); env && *env) return env;
  return MLC_DEFAULT_DATA_DIR;
}

Graph load_dataset(std::string_view name) {
  const auto path = data_dir() / (std::string(name) + ".mtx");
  if (!std::filesystem::exists(path)) {
    throw Error("dataset not found: " + path.string());
  }
  return read_graph(path);
}

}  // namespace mlc
