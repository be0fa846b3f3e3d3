#include "qcolor/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qcolor/rng.hpp"

namespace qcolor {

namespace {

void check_node(int v, int n) {
  if (v < 0 || v >= n) {
    throw std::out_of_range("node index " + std::to_string(v) +
                            " out of range for n=" + std::to_string(n));
  }
}

}  // namespace

Graph::Graph(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("graph needs at least one node");
}

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : Graph(n) {
  for (auto& [u, v] : edges) {
    check_node(u, n);
    check_node(v, n);
    if (u == v) throw std::invalid_argument("self-loop rejected");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
}

void Graph::add_edge(int u, int v) {
  check_node(u, n_);
  check_node(v, n_);
  if (u == v) throw std::invalid_argument("self-loop rejected");
  if (u > v) std::swap(u, v);
  const std::pair<int, int> e{u, v};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it != edges_.end() && *it == e) return;
  edges_.insert(it, e);
}

bool Graph::has_edge(int u, int v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), std::pair{u, v});
}

std::vector<int> Graph::degrees() const {
  std::vector<int> deg(n_, 0);
  for (const auto& [u, v] : edges_) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

std::vector<std::vector<int>> Graph::adjacency_lists() const {
  std::vector<std::vector<int>> adj(n_);
  for (const auto& [u, v] : edges_) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

bool Graph::is_connected() const {
  if (n_ == 1) return true;
  const auto adj = adjacency_lists();
  std::vector<char> seen(n_, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int visited = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++visited;
        stack.push_back(w);
      }
    }
  }
  return visited == n_;
}

Graph generate_er(int n, double p, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("generate_er: n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("generate_er: p must be in [0,1]");
  }
  Rng rng(seed);
  Graph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.uniform01() < p) g.add_edge(u, v);
    }
  }
  return g;
}

double average_connectivity(const Graph& g) {
  return 2.0 * g.num_edges() / g.num_nodes();
}

double problem_volume(int n, int k, double p) {
  if (n < 1 || k < 1) throw std::invalid_argument("problem_volume: n, k >= 1");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("problem_volume: p must be in [0,1]");
  }
  return p * n * k;
}

ColoringReport validate_coloring(const Graph& g,
                                 const std::vector<int>& assignment, int k) {
  if (static_cast<int>(assignment.size()) != g.num_nodes()) {
    throw std::invalid_argument("assignment length must equal node count");
  }
  ColoringReport report;
  report.assignment = assignment;
  for (int c : assignment) {
    if (c == kNoColor) {
      ++report.missing_count;
    } else if (c < 0 || c >= k) {
      throw std::invalid_argument("color index out of range [0, k)");
    }
  }
  for (const auto& [u, v] : g.edges()) {
    if (assignment[u] != kNoColor && assignment[u] == assignment[v]) {
      ++report.conflict_count;
    }
  }
  return report;
}

BruteForceResult brute_force_coloring(const Graph& g, int k) {
  if (k < 1) throw std::invalid_argument("brute_force_coloring: k >= 1");
  const int n = g.num_nodes();
  double size = std::pow(static_cast<double>(k), n);
  if (size > 1e8) {
    throw std::invalid_argument("brute_force_coloring: k^n exceeds 1e8 guard");
  }
  const auto& edges = g.edges();
  std::vector<int> colors(n, 0);
  long long best = g.num_edges() + 1;
  long long count = 0;
  for (;;) {
    long long conflicts = 0;
    for (const auto& [u, v] : edges) conflicts += colors[u] == colors[v];
    if (conflicts < best) {
      best = conflicts;
      count = 1;
    } else if (conflicts == best) {
      ++count;
    }
    int pos = n - 1;
    while (pos >= 0 && colors[pos] == k - 1) colors[pos--] = 0;
    if (pos < 0) break;
    ++colors[pos];
  }
  return {best, count};
}

long long count_proper_colorings(const Graph& g, int k) {
  const auto r = brute_force_coloring(g, k);
  return r.min_conflicts == 0 ? r.optimal_count : 0;
}

Graph read_graph(std::istream& in) {
  std::string line;
  auto next_data_line = [&](std::string& out) {
    while (std::getline(in, line)) {
      const auto pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos || line[pos] == '#') continue;
      out = line;
      return true;
    }
    return false;
  };
  std::string header;
  if (!next_data_line(header)) throw std::runtime_error("graph file: empty");
  std::istringstream hs(header);
  int n = 0, m = 0;
  if (!(hs >> n >> m)) throw std::runtime_error("graph file: bad header");
  Graph g(n);
  for (int i = 0; i < m; ++i) {
    std::string edge_line;
    if (!next_data_line(edge_line)) {
      throw std::runtime_error("graph file: expected " + std::to_string(m) +
                               " edges, got " + std::to_string(i));
    }
    std::istringstream es(edge_line);
    int u = 0, v = 0;
    if (!(es >> u >> v)) throw std::runtime_error("graph file: bad edge line");
    g.add_edge(u, v);
  }
  return g;
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.num_nodes() << ' ' << g.num_edges() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void write_graph_file(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write graph file: " + path);
  write_graph(out, g);
}

ReferenceInstance reference_instance(const std::string& name) {
  if (name == "ref-a" || name == "a" || name == "A") {
    // Diamond: K4 minus the (1,3) edge.
    return {"ref-a", Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}}), 3};
  }
  if (name == "ref-b" || name == "b" || name == "B") {
    // K5 minus the (3,4) edge.
    return {"ref-b",
            Graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4},
                      {2, 3}, {2, 4}}),
            4};
  }
  if (name == "ref-c" || name == "c" || name == "C") {
    // Wheel: hub 0 joined to the cycle 1-2-3-4-5.
    return {"ref-c",
            Graph(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {1, 2}, {1, 5},
                      {2, 3}, {3, 4}, {4, 5}}),
            4};
  }
  throw std::invalid_argument("unknown reference instance: " + name);
}

Graph petersen_graph() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);        // outer cycle
    g.add_edge(i, i + 5);              // spokes
    g.add_edge(5 + i, 5 + (i + 2) % 5);  // inner pentagram
  }
  return g;
}

}  // namespace qcolor
