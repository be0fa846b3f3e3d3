#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace qcolor {

// Marker for a node without an assigned color.
inline constexpr int kNoColor = -1;

// Undirected simple graph. Edges are stored canonically: u < v, sorted
// lexicographically, no duplicates, no self-loops.
class Graph {
 public:
  explicit Graph(int n);
  Graph(int n, std::vector<std::pair<int, int>> edges);

  int num_nodes() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  void add_edge(int u, int v);
  bool has_edge(int u, int v) const;
  std::vector<int> degrees() const;
  std::vector<std::vector<int>> adjacency_lists() const;
  bool is_connected() const;

  bool operator==(const Graph& other) const = default;

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
};

struct ColoringReport {
  std::vector<int> assignment;  // color in [0, k) or kNoColor per node
  int missing_count = 0;
  int conflict_count = 0;       // edges with equal, non-missing endpoint colors
  int total_errors() const { return missing_count + conflict_count; }
};

// G(n, p): each of the C(n,2) candidate edges, visited in lexicographic
// order, is included independently with probability p. Identical
// (n, p, seed) triples give identical graphs.
Graph generate_er(int n, double p, std::uint64_t seed);

// Empirical mean degree, 2|E|/n.
double average_connectivity(const Graph& g);

// The scalar instance-size measure p*n*k.
double problem_volume(int n, int k, double p);

// Counts uncolored nodes and same-color edges. Edges touching a missing
// node are not counted as conflicts. Stated colors must be < k.
ColoringReport validate_coloring(const Graph& g,
                                 const std::vector<int>& assignment, int k);

struct BruteForceResult {
  long long min_conflicts = 0;
  long long optimal_count = 0;  // number of assignments achieving the minimum
};

// Exhaustive scan of all k^n full assignments. Guarded at k^n <= 1e8.
BruteForceResult brute_force_coloring(const Graph& g, int k);

// Number of proper k-colorings (0 when min_conflicts > 0).
long long count_proper_colorings(const Graph& g, int k);

// Text format: first line "n m", then m lines "u v" (0-indexed). Lines
// starting with '#' are comments. The writer emits canonical order.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);
void write_graph_file(const std::string& path, const Graph& g);

// Named example instances with documented edge lists. Chromatic number
// equals the paired color count in each case:
//   ref-a: diamond (K4 minus one edge), 4 nodes, 3 colors
//   ref-b: K5 minus one edge, 5 nodes, 4 colors
//   ref-c: wheel on 5+1 nodes (hub + C5), 6 nodes, 4 colors
struct ReferenceInstance {
  std::string name;
  Graph graph;
  int k;
};
ReferenceInstance reference_instance(const std::string& name);

// Petersen graph (10 nodes, 3-chromatic); handy test fixture.
Graph petersen_graph();

}  // namespace qcolor
