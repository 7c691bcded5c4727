#include "btlrank/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "btlrank/errors.hpp"
#include "btlrank/rng.hpp"

namespace btlrank {

BtlParameters::BtlParameters(Eigen::VectorXd theta)
    : theta_(std::move(theta)) {
  if (theta_.size() == 0) throw ValidationError("empty parameter vector");
  if (!theta_.allFinite())
    throw ValidationError("parameter vector has non-finite entries");
  theta_ = centered(theta_);
}

Eigen::VectorXd centered(const Eigen::VectorXd& v) {
  if (v.size() == 0) return v;
  return v.array() - v.mean();
}

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double log_sigmoid(double t) {
  if (t >= 0.0) return -std::log1p(std::exp(-t));
  return t - std::log1p(std::exp(t));
}

double win_prob(const Eigen::VectorXd& theta, int i, int j) {
  return sigmoid(theta(i) - theta(j));
}

double kappa(const Eigen::VectorXd& theta) {
  if (theta.size() == 0) return 0.0;
  return theta.maxCoeff() - theta.minCoeff();
}

double kappa_E(const Eigen::VectorXd& theta, const ComparisonGraph& g) {
  if (theta.size() != g.n())
    throw ValidationError("theta length " + std::to_string(theta.size()) +
                          " does not match graph size " +
                          std::to_string(g.n()));
  double gap = 0.0;
  for (const Edge& e : g.edges())
    gap = std::max(gap, std::abs(theta(e.i) - theta(e.j)));
  return gap;
}

BtlParameters linear_theta(int n, double kappa) {
  if (n < 2) throw ValidationError("linear_theta needs n >= 2");
  if (!(kappa >= 0.0)) throw ValidationError("linear_theta needs kappa >= 0");
  const double delta = kappa / (n - 1);
  Eigen::VectorXd theta(n);
  for (int i = 0; i < n; ++i) theta(i) = i * delta - kappa / 2.0;
  return BtlParameters(std::move(theta));
}

BtlParameters shifted_island_theta(const IslandParams& params, double kappa,
                                   double s) {
  Eigen::VectorXd theta = linear_theta(params.n(), kappa).theta();
  std::vector<double> shift(params.n(), 0.0);
  for (int k = 0; k < params.islands; ++k)
    for (int v : params.block(k)) shift[v] = -k * s;
  for (int v = 0; v < params.n(); ++v) theta(v) += shift[v];
  return BtlParameters(std::move(theta));
}

BtlParameters shifted_barbell_theta(int n, double kappa, double s) {
  Eigen::VectorXd theta = linear_theta(n, kappa).theta();
  for (int i = n / 2; i < n; ++i) theta(i) -= s;
  return BtlParameters(std::move(theta));
}

ComparisonData::ComparisonData(ComparisonGraph graph, std::int64_t L,
                               std::vector<std::int64_t> wins)
    : graph_(std::move(graph)), L_(L), wins_(std::move(wins)) {
  if (L_ < 1) throw ValidationError("comparisons per edge must be >= 1");
  if (wins_.size() != graph_.num_edges())
    throw ValidationError("expected one win count per edge (" +
                          std::to_string(graph_.num_edges()) + "), got " +
                          std::to_string(wins_.size()));
  for (std::int64_t w : wins_)
    if (w < 0 || w > L_)
      throw ValidationError("win count " + std::to_string(w) +
                            " outside [0, L=" + std::to_string(L_) + "]");
}

ComparisonData ComparisonData::induced(std::span<const int> nodes) const {
  ComparisonGraph sub = graph_.induced(nodes);
  std::vector<std::int64_t> sub_wins;
  sub_wins.reserve(sub.num_edges());
  for (const Edge& e : sub.edges()) {
    // Local (e.i, e.j) maps to global (a, b); flip the count if a > b.
    const int a = nodes[e.i];
    const int b = nodes[e.j];
    const auto idx = graph_.edge_index(a, b);
    const std::int64_t w = wins_[idx];
    sub_wins.push_back(a < b ? w : L_ - w);
  }
  return ComparisonData(std::move(sub), L_, std::move(sub_wins));
}

std::vector<Arc> ComparisonData::win_arcs() const {
  std::vector<Arc> arcs;
  const auto& edges = graph_.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (wins_[e] > 0) arcs.push_back({edges[e].i, edges[e].j});
    if (wins_[e] < L_) arcs.push_back({edges[e].j, edges[e].i});
  }
  return arcs;
}

ComparisonData simulate(const ComparisonGraph& g, const Eigen::VectorXd& theta,
                        std::int64_t L, std::uint64_t seed) {
  if (theta.size() != g.n())
    throw ValidationError("theta length does not match graph size");
  if (L < 1) throw ValidationError("simulate needs L >= 1");
  Rng rng(seed);
  std::vector<std::int64_t> wins;
  wins.reserve(g.num_edges());
  for (const Edge& e : g.edges())
    wins.push_back(rng.binomial(L, win_prob(theta, e.i, e.j)));
  return ComparisonData(g, L, std::move(wins));
}

bool is_strongly_connected_directed(const ComparisonData& data) {
  const auto arcs = data.win_arcs();
  return is_strongly_connected(data.n(), arcs);
}

}  // namespace btlrank
