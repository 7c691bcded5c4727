#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "btlrank/graph.hpp"

namespace btlrank {

// Log-strength scores theta, centered so that sum(theta) = 0.
class BtlParameters {
 public:
  // Centers the input. Throws ValidationError on empty or non-finite input.
  explicit BtlParameters(Eigen::VectorXd theta);

  const Eigen::VectorXd& theta() const { return theta_; }
  int size() const { return static_cast<int>(theta_.size()); }
  double operator[](int i) const { return theta_(i); }

 private:
  Eigen::VectorXd theta_;
};

Eigen::VectorXd centered(const Eigen::VectorXd& v);

// psi(t) = 1 / (1 + exp(-t)), evaluated without overflow.
double sigmoid(double t);
// log psi(t).
double log_sigmoid(double t);

// P(i beats j) = psi(theta_i - theta_j).
double win_prob(const Eigen::VectorXd& theta, int i, int j);

// Largest gap over all pairs.
double kappa(const Eigen::VectorXd& theta);
// Largest gap over the edges of g.
double kappa_E(const Eigen::VectorXd& theta, const ComparisonGraph& g);

// Equally spaced centered scores with spread exactly `kappa`.
BtlParameters linear_theta(int n, double kappa);

// Linear scores on an island graph with island k (0-based) lowered by k*s.
// Overlap nodes take the shift of the later island. Re-centered.
BtlParameters shifted_island_theta(const IslandParams& params, double kappa,
                                   double s);
// Linear scores with the upper half (indices >= n/2) lowered by s. Re-centered.
BtlParameters shifted_barbell_theta(int n, double kappa, double s);

// Outcomes of L comparisons on every edge of a graph. wins[e] counts how often
// edges()[e].i beat edges()[e].j.
class ComparisonData {
 public:
  ComparisonData(ComparisonGraph graph, std::int64_t L,
                 std::vector<std::int64_t> wins);

  const ComparisonGraph& graph() const { return graph_; }
  int n() const { return graph_.n(); }
  std::int64_t L() const { return L_; }
  const std::vector<std::int64_t>& wins() const { return wins_; }

  // Empirical win fraction of edges()[e].i against edges()[e].j.
  double ybar(std::size_t e) const {
    return static_cast<double>(wins_[e]) / static_cast<double>(L_);
  }

  // Data on the subgraph induced by `nodes`, relabelled as in
  // ComparisonGraph::induced.
  ComparisonData induced(std::span<const int> nodes) const;

  // Arcs winner -> loser for every pair with at least one such win.
  std::vector<Arc> win_arcs() const;

 private:
  ComparisonGraph graph_;
  std::int64_t L_;
  std::vector<std::int64_t> wins_;
};

// wins_e ~ Binomial(L, psi(theta_i - theta_j)) independently per edge.
ComparisonData simulate(const ComparisonGraph& g, const Eigen::VectorXd& theta,
                        std::int64_t L, std::uint64_t seed);

// Whether the win digraph is strongly connected, i.e. the vanilla MLE exists.
bool is_strongly_connected_directed(const ComparisonData& data);

}  // namespace btlrank
