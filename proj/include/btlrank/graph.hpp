#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace btlrank {

// Unordered pair of item indices, stored with i < j.
struct Edge {
  int i = 0;
  int j = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Undirected simple graph on items {0, ..., n-1}: the comparison scheme.
// Immutable; the edge list is kept in lexicographic (i, j) order.
class ComparisonGraph {
 public:
  // Accepts pairs in either orientation. Throws ValidationError on
  // out-of-range endpoints, self-loops or duplicate pairs.
  ComparisonGraph(int n, std::vector<Edge> edges);

  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t num_edges() const { return edges_.size(); }

  std::vector<int> degrees() const;
  bool has_edge(int a, int b) const;
  // Position of the edge in edges(), or -1.
  std::ptrdiff_t edge_index(int a, int b) const;
  std::vector<std::vector<int>> adjacency_list() const;
  Eigen::MatrixXd adjacency_matrix() const;
  // D - A.
  Eigen::MatrixXd laplacian() const;

  // Subgraph induced by `nodes` (sorted, distinct), relabelled to
  // 0..nodes.size()-1 in the given order.
  ComparisonGraph induced(std::span<const int> nodes) const;

  friend bool operator==(const ComparisonGraph&,
                         const ComparisonGraph&) = default;

 private:
  int n_;
  std::vector<Edge> edges_;
};

// Layout of an island graph: `islands` cliques of `n_island` nodes on
// consecutive index blocks, consecutive blocks sharing `n_overlap` nodes.
struct IslandParams {
  int islands = 3;
  int n_island = 50;
  int n_overlap = 5;

  int n() const { return islands * n_island - (islands - 1) * n_overlap; }
  int block_start(int k) const { return k * (n_island - n_overlap); }
  // Sorted global node indices of island k.
  std::vector<int> block(int k) const;
};

// Bridge edges of a barbell: given explicitly, as a count, or as a density of
// the n1*n2 cross pairs (converted to round(n1*n2*p), at least one).
struct BridgeCount {
  std::int64_t m = 1;
};
struct BridgeDensity {
  double p = 0.0;
};
using BridgeSpec = std::variant<std::vector<Edge>, BridgeCount, BridgeDensity>;

namespace topology {

ComparisonGraph complete(int n);
ComparisonGraph path(int n);
ComparisonGraph star(int n);
ComparisonGraph cycle(int n);
ComparisonGraph complete_bipartite(int m1, int m2);
// Edges (i, j) with 0 < |i - j| <= k.
ComparisonGraph banded(int n, int k);
// Edges (i, j) with circular distance min(|i-j|, n-|i-j|) <= d.
ComparisonGraph cayley(int n, int d);
ComparisonGraph erdos_renyi(int n, double p, std::uint64_t seed);
ComparisonGraph island(const IslandParams& params);
inline ComparisonGraph island(int k, int n_island, int n_overlap) {
  return island(IslandParams{k, n_island, n_overlap});
}
// Cliques on {0..n1-1} and {n1..n1+n2-1} plus distinct cross edges sampled
// uniformly without replacement.
ComparisonGraph barbell(int n1, int n2, const BridgeSpec& bridges,
                        std::uint64_t seed);
// Cross edges of a barbell graph (i < n1 <= j).
std::vector<Edge> barbell_bridges(const ComparisonGraph& g, int n1);

}  // namespace topology

struct SpectralSummary {
  double lambda2 = 0.0;
  int n_max = 0;
  int n_min = 0;
  std::vector<int> degrees;
  // min over unordered pairs i != j of |N(i) ∩ N(j)|.
  int min_common_neighbors = 0;
  // Ascending eigenvalues of D - A.
  Eigen::VectorXd laplacian_spectrum;
  bool connected = false;
  std::size_t num_edges = 0;

  int n() const { return static_cast<int>(degrees.size()); }
};

SpectralSummary spectral_summary(const ComparisonGraph& g);

// Spectrum of the Laplacian averaged over all |E|*L individual comparisons.
struct NormalizedLaplacianSpectrum {
  Eigen::VectorXd eigenvalues;
  std::int64_t n_comp = 0;
};

// Throws ValidationError when g is disconnected or L < 1.
NormalizedLaplacianSpectrum normalized_spectrum(const ComparisonGraph& g,
                                                std::int64_t L);
NormalizedLaplacianSpectrum normalized_spectrum(const SpectralSummary& s,
                                                std::int64_t L);

bool is_connected(const ComparisonGraph& g);
struct Arc {
  int from = 0;
  int to = 0;
};

// True when every node reaches every other node along the arcs.
bool is_strongly_connected(int n, std::span<const Arc> arcs);
bool is_tree(const ComparisonGraph& g);
// Longest shortest path (in edges). Requires a tree.
int tree_diameter(const ComparisonGraph& g);

}  // namespace btlrank
