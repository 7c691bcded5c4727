#include "btlrank/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "btlrank/errors.hpp"
#include "btlrank/rng.hpp"

namespace btlrank {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

// Breadth-first distances from `source`; -1 for unreachable nodes.
std::vector<int> bfs_distances(const std::vector<std::vector<int>>& adj,
                               int source) {
  std::vector<int> dist(adj.size(), -1);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

}  // namespace

ComparisonGraph::ComparisonGraph(int n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
  require(n >= 1, "graph must have at least one node, got n=" +
                      std::to_string(n));
  for (Edge& e : edges_) {
    require(e.i >= 0 && e.i < n && e.j >= 0 && e.j < n,
            "edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                ") has an endpoint outside [0," + std::to_string(n) + ")");
    require(e.i != e.j, "self-loop at node " + std::to_string(e.i));
    if (e.i > e.j) std::swap(e.i, e.j);
  }
  std::sort(edges_.begin(), edges_.end());
  const auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  require(dup == edges_.end(),
          dup == edges_.end() ? std::string()
                              : "duplicate edge (" + std::to_string(dup->i) +
                                    "," + std::to_string(dup->j) + ")");
}

std::vector<int> ComparisonGraph::degrees() const {
  std::vector<int> deg(n_, 0);
  for (const Edge& e : edges_) {
    ++deg[e.i];
    ++deg[e.j];
  }
  return deg;
}

std::ptrdiff_t ComparisonGraph::edge_index(int a, int b) const {
  const Edge key{std::min(a, b), std::max(a, b)};
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return -1;
  return it - edges_.begin();
}

bool ComparisonGraph::has_edge(int a, int b) const {
  return edge_index(a, b) >= 0;
}

std::vector<std::vector<int>> ComparisonGraph::adjacency_list() const {
  std::vector<std::vector<int>> adj(n_);
  for (const Edge& e : edges_) {
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
  }
  return adj;
}

Eigen::MatrixXd ComparisonGraph::adjacency_matrix() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
  for (const Edge& e : edges_) {
    a(e.i, e.j) = 1.0;
    a(e.j, e.i) = 1.0;
  }
  return a;
}

Eigen::MatrixXd ComparisonGraph::laplacian() const {
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n_, n_);
  for (const Edge& e : edges_) {
    l(e.i, e.i) += 1.0;
    l(e.j, e.j) += 1.0;
    l(e.i, e.j) -= 1.0;
    l(e.j, e.i) -= 1.0;
  }
  return l;
}

ComparisonGraph ComparisonGraph::induced(std::span<const int> nodes) const {
  require(!nodes.empty(), "induced subgraph needs at least one node");
  std::vector<int> local(n_, -1);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const int v = nodes[k];
    require(v >= 0 && v < n_, "induced node " + std::to_string(v) +
                                  " out of range");
    require(local[v] < 0, "induced node " + std::to_string(v) + " repeated");
    local[v] = static_cast<int>(k);
  }
  std::vector<Edge> sub;
  for (const Edge& e : edges_) {
    if (local[e.i] >= 0 && local[e.j] >= 0) sub.push_back({local[e.i], local[e.j]});
  }
  return ComparisonGraph(static_cast<int>(nodes.size()), std::move(sub));
}

std::vector<int> IslandParams::block(int k) const {
  std::vector<int> nodes(n_island);
  for (int t = 0; t < n_island; ++t) nodes[t] = block_start(k) + t;
  return nodes;
}

namespace topology {

ComparisonGraph complete(int n) {
  require(n >= 2, "complete(n) needs n >= 2");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
  return ComparisonGraph(n, std::move(edges));
}

ComparisonGraph path(int n) {
  require(n >= 2, "path(n) needs n >= 2");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return ComparisonGraph(n, std::move(edges));
}

ComparisonGraph star(int n) {
  require(n >= 2, "star(n) needs n >= 2");
  std::vector<Edge> edges;
  for (int j = 1; j < n; ++j) edges.push_back({0, j});
  return ComparisonGraph(n, std::move(edges));
}

ComparisonGraph cycle(int n) {
  require(n >= 3, "cycle(n) needs n >= 3");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  edges.push_back({0, n - 1});
  return ComparisonGraph(n, std::move(edges));
}

ComparisonGraph complete_bipartite(int m1, int m2) {
  require(m1 >= 1 && m2 >= 1, "complete_bipartite needs m1, m2 >= 1");
  std::vector<Edge> edges;
  for (int i = 0; i < m1; ++i)
    for (int j = 0; j < m2; ++j) edges.push_back({i, m1 + j});
  return ComparisonGraph(m1 + m2, std::move(edges));
}

ComparisonGraph banded(int n, int k) {
  require(n >= 2, "banded(n, k) needs n >= 2");
  require(k >= 1 && k < n, "banded(n, k) needs 1 <= k < n");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j <= std::min(n - 1, i + k); ++j) edges.push_back({i, j});
  return ComparisonGraph(n, std::move(edges));
}

ComparisonGraph cayley(int n, int d) {
  require(n >= 2, "cayley(n, d) needs n >= 2");
  require(d >= 1 && 2 * d < n, "cayley(n, d) needs 1 <= d < n/2");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int k = 1; k <= d; ++k) edges.push_back({i, (i + k) % n});
  return ComparisonGraph(n, std::move(edges));
}

ComparisonGraph erdos_renyi(int n, double p, std::uint64_t seed) {
  require(n >= 1, "erdos_renyi needs n >= 1");
  require(p >= 0.0 && p <= 1.0, "erdos_renyi needs 0 <= p <= 1");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.bernoulli(p)) edges.push_back({i, j});
  return ComparisonGraph(n, std::move(edges));
}

ComparisonGraph island(const IslandParams& params) {
  require(params.islands >= 2, "island graph needs at least 2 islands");
  require(params.n_island >= 2, "island graph needs n_island >= 2");
  require(params.n_overlap >= 0 && params.n_overlap < params.n_island,
          "island graph needs 0 <= n_overlap < n_island");
  std::vector<Edge> edges;
  for (int k = 0; k < params.islands; ++k) {
    const int start = params.block_start(k);
    for (int a = 0; a < params.n_island; ++a)
      for (int b = a + 1; b < params.n_island; ++b)
        edges.push_back({start + a, start + b});
  }
  // Consecutive blocks share an overlap clique whose edges appear twice.
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return ComparisonGraph(params.n(), std::move(edges));
}

ComparisonGraph barbell(int n1, int n2, const BridgeSpec& bridges,
                        std::uint64_t seed) {
  require(n1 >= 1 && n2 >= 1, "barbell needs n1, n2 >= 1");
  const std::int64_t cross = static_cast<std::int64_t>(n1) * n2;
  std::vector<Edge> edges;
  for (int i = 0; i < n1; ++i)
    for (int j = i + 1; j < n1; ++j) edges.push_back({i, j});
  for (int i = n1; i < n1 + n2; ++i)
    for (int j = i + 1; j < n1 + n2; ++j) edges.push_back({i, j});

  if (const auto* explicit_edges = std::get_if<std::vector<Edge>>(&bridges)) {
    require(!explicit_edges->empty(), "barbell needs at least one bridge");
    for (Edge e : *explicit_edges) {
      if (e.i > e.j) std::swap(e.i, e.j);
      require(e.i >= 0 && e.i < n1 && e.j >= n1 && e.j < n1 + n2,
              "bridge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                  ") does not cross the two cliques");
      edges.push_back(e);
    }
    return ComparisonGraph(n1 + n2, std::move(edges));
  }

  std::int64_t m = 0;
  if (const auto* count = std::get_if<BridgeCount>(&bridges)) {
    m = count->m;
    require(m >= 1, "barbell needs at least one bridge");
  } else {
    const double p = std::get<BridgeDensity>(bridges).p;
    require(p > 0.0 && p <= 1.0, "barbell bridge density must be in (0, 1]");
    m = std::max<std::int64_t>(
        1, std::llround(static_cast<double>(cross) * p));
  }
  require(m <= cross, "barbell asks for " + std::to_string(m) +
                          " bridges but only " + std::to_string(cross) +
                          " cross pairs exist");

  // Floyd's sampling of m distinct cross-pair indices.
  Rng rng(seed);
  std::vector<std::int64_t> chosen;
  chosen.reserve(m);
  std::vector<bool> taken(cross, false);
  for (std::int64_t r = cross - m; r < cross; ++r) {
    auto t = static_cast<std::int64_t>(rng.uniform_index(r + 1));
    if (taken[t]) t = r;
    taken[t] = true;
    chosen.push_back(t);
  }
  for (std::int64_t t : chosen) {
    edges.push_back({static_cast<int>(t / n2), n1 + static_cast<int>(t % n2)});
  }
  return ComparisonGraph(n1 + n2, std::move(edges));
}

std::vector<Edge> barbell_bridges(const ComparisonGraph& g, int n1) {
  std::vector<Edge> out;
  for (const Edge& e : g.edges())
    if (e.i < n1 && e.j >= n1) out.push_back(e);
  return out;
}

}  // namespace topology

SpectralSummary spectral_summary(const ComparisonGraph& g) {
  SpectralSummary s;
  const int n = g.n();
  s.degrees = g.degrees();
  s.num_edges = g.num_edges();
  s.n_max = *std::max_element(s.degrees.begin(), s.degrees.end());
  s.n_min = *std::min_element(s.degrees.begin(), s.degrees.end());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      g.laplacian(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericalError("Laplacian eigendecomposition failed");
  s.laplacian_spectrum = solver.eigenvalues();
  s.lambda2 = n >= 2 ? s.laplacian_spectrum(1) : 0.0;
  s.connected = n == 1 || s.lambda2 > 1e-9;

  if (n >= 2) {
    const Eigen::MatrixXd a = g.adjacency_matrix();
    const Eigen::MatrixXd common = a * a;
    double best = std::numeric_limits<double>::infinity();
    for (int j = 1; j < n; ++j)
      for (int i = 0; i < j; ++i) best = std::min(best, common(i, j));
    s.min_common_neighbors = static_cast<int>(std::lround(best));
  }
  return s;
}

NormalizedLaplacianSpectrum normalized_spectrum(const SpectralSummary& s,
                                                std::int64_t L) {
  require(L >= 1, "normalized spectrum needs L >= 1");
  require(s.connected, "normalized spectrum needs a connected graph");
  NormalizedLaplacianSpectrum out;
  out.eigenvalues =
      s.laplacian_spectrum / static_cast<double>(s.num_edges);
  out.n_comp = static_cast<std::int64_t>(s.num_edges) * L;
  return out;
}

NormalizedLaplacianSpectrum normalized_spectrum(const ComparisonGraph& g,
                                                std::int64_t L) {
  require(L >= 1, "normalized spectrum needs L >= 1");
  require(is_connected(g), "normalized spectrum needs a connected graph");
  return normalized_spectrum(spectral_summary(g), L);
}

bool is_connected(const ComparisonGraph& g) {
  const auto dist = bfs_distances(g.adjacency_list(), 0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

bool is_strongly_connected(int n, std::span<const Arc> arcs) {
  std::vector<std::vector<int>> forward(n), backward(n);
  for (const Arc& a : arcs) {
    forward[a.from].push_back(a.to);
    backward[a.to].push_back(a.from);
  }
  for (const auto* adj : {&forward, &backward}) {
    const auto dist = bfs_distances(*adj, 0);
    if (std::any_of(dist.begin(), dist.end(), [](int d) { return d < 0; }))
      return false;
  }
  return true;
}

bool is_tree(const ComparisonGraph& g) {
  return g.num_edges() == static_cast<std::size_t>(g.n() - 1) &&
         is_connected(g);
}

int tree_diameter(const ComparisonGraph& g) {
  require(is_tree(g), "tree diameter needs a tree");
  const auto adj = g.adjacency_list();
  const auto first = bfs_distances(adj, 0);
  const int far = static_cast<int>(
      std::max_element(first.begin(), first.end()) - first.begin());
  const auto second = bfs_distances(adj, far);
  return *std::max_element(second.begin(), second.end());
}

}  // namespace btlrank
