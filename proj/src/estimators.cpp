#include "btlrank/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "btlrank/errors.hpp"

namespace btlrank {
namespace {

struct Term {
  int i;
  int j;
  double ybar;
  double weight;
};

// Weighted BTL negative log-likelihood over a list of pair terms.
class PairwiseObjective {
 public:
  PairwiseObjective(int n, std::vector<Term> terms)
      : n_(n), terms_(std::move(terms)) {}

  static PairwiseObjective from(const ComparisonData& data, double weight) {
    std::vector<Term> terms;
    terms.reserve(data.graph().num_edges());
    const auto& edges = data.graph().edges();
    for (std::size_t e = 0; e < edges.size(); ++e)
      terms.push_back({edges[e].i, edges[e].j, data.ybar(e), weight});
    return PairwiseObjective(data.n(), std::move(terms));
  }

  int n() const { return n_; }

  double value(const Eigen::VectorXd& theta, double rho) const {
    double total = 0.0;
    for (const Term& t : terms_) {
      const double d = theta(t.i) - theta(t.j);
      double term = 0.0;
      if (t.ybar > 0.0) term += t.ybar * log_sigmoid(d);
      if (t.ybar < 1.0) term += (1.0 - t.ybar) * log_sigmoid(-d);
      total -= t.weight * term;
    }
    return total + 0.5 * rho * theta.squaredNorm();
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& theta, double rho) const {
    Eigen::VectorXd g = rho * theta;
    for (const Term& t : terms_) {
      const double r = t.weight * (sigmoid(theta(t.i) - theta(t.j)) - t.ybar);
      g(t.i) += r;
      g(t.j) -= r;
    }
    return g;
  }

  Eigen::MatrixXd hessian(const Eigen::VectorXd& theta, double rho) const {
    Eigen::MatrixXd h = rho * Eigen::MatrixXd::Identity(n_, n_);
    for (const Term& t : terms_) {
      const double p = sigmoid(theta(t.i) - theta(t.j));
      const double c = t.weight * p * (1.0 - p);
      h(t.i, t.i) += c;
      h(t.j, t.j) += c;
      h(t.i, t.j) -= c;
      h(t.j, t.i) -= c;
    }
    return h;
  }

  double max_weighted_degree() const {
    std::vector<double> deg(n_, 0.0);
    for (const Term& t : terms_) {
      deg[t.i] += t.weight;
      deg[t.j] += t.weight;
    }
    return deg.empty() ? 0.0 : *std::max_element(deg.begin(), deg.end());
  }

  void append(const PairwiseObjective& other) {
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  }

 private:
  int n_;
  std::vector<Term> terms_;
};

void check_dims(const Eigen::VectorXd& theta, const ComparisonData& data) {
  if (theta.size() != data.n())
    throw ValidationError("theta length " + std::to_string(theta.size()) +
                          " does not match item count " +
                          std::to_string(data.n()));
}

double sup_norm(const Eigen::VectorXd& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

double resolve_rho(const FitConfig& config, int n_max, std::int64_t L) {
  if (config.rho_rule == RhoRule::kAuto) return auto_rho(n_max, L);
  if (!(config.rho >= 0.0) || !std::isfinite(config.rho))
    throw ValidationError("rho must be a finite value >= 0");
  return config.rho;
}

FitResult descend(const PairwiseObjective& objective, double rho,
                  double smoothness, const FitConfig& config) {
  if (!(config.grad_tol > 0.0)) throw ValidationError("grad_tol must be > 0");
  const int n = objective.n();
  std::int64_t max_iters = 0;
  if (config.max_iters) {
    max_iters = *config.max_iters;
  } else if (rho > 0.0) {
    const double budget = 200.0 * n * (1.0 + smoothness / rho);
    max_iters = static_cast<std::int64_t>(std::min(budget, 5e6));
  } else {
    max_iters = 1000000;
  }
  if (max_iters < 1) throw ValidationError("max_iters must be >= 1");
  double eta = 1.0 / (rho + smoothness);
  if (config.step_size) {
    if (!(*config.step_size > 0.0))
      throw ValidationError("step size must be > 0");
    eta = *config.step_size;
  }

  Eigen::VectorXd theta = Eigen::VectorXd::Zero(n);
  std::vector<double> trace;
  auto record = [&]() {
    if (!config.trace_objective) return;
    const double v = objective.value(theta, rho);
    if (!std::isfinite(v)) throw NumericalError("objective became non-finite");
    trace.push_back(v);
  };
  record();

  std::int64_t iter = 0;
  double grad_norm = 0.0;
  bool converged = false;
  for (;; ++iter) {
    const Eigen::VectorXd g = objective.gradient(theta, rho);
    grad_norm = sup_norm(g);
    if (!std::isfinite(grad_norm))
      throw NumericalError("gradient became non-finite at iteration " +
                           std::to_string(iter));
    if (grad_norm <= config.grad_tol) {
      converged = true;
      break;
    }
    if (iter == max_iters) break;
    theta -= eta * g;
    theta = centered(theta);
    record();
  }
  if (!std::isfinite(objective.value(theta, rho)))
    throw NumericalError("objective is non-finite at the returned estimate");

  FitResult result{BtlParameters(theta), iter, grad_norm, rho, converged, {}};
  result.objective_trace = std::move(trace);
  return result;
}

}  // namespace

double neg_log_likelihood(const Eigen::VectorXd& theta,
                          const ComparisonData& data, double rho) {
  check_dims(theta, data);
  return PairwiseObjective::from(data, 1.0).value(theta, rho);
}

Eigen::VectorXd gradient(const Eigen::VectorXd& theta,
                         const ComparisonData& data, double rho) {
  check_dims(theta, data);
  return PairwiseObjective::from(data, 1.0).gradient(theta, rho);
}

Eigen::MatrixXd hessian(const Eigen::VectorXd& theta,
                        const ComparisonData& data, double rho) {
  check_dims(theta, data);
  return PairwiseObjective::from(data, 1.0).hessian(theta, rho);
}

double auto_rho(int n_max, std::int64_t L) {
  if (L < 1) throw ValidationError("L must be >= 1");
  return std::sqrt(static_cast<double>(n_max) / static_cast<double>(L));
}

FitResult fit(const ComparisonData& data, const FitConfig& config) {
  return fit_pooled(std::span<const ComparisonData>(&data, 1), config);
}

FitResult fit_pooled(std::span<const ComparisonData> datasets,
                     const FitConfig& config) {
  if (datasets.empty()) throw ValidationError("no datasets to fit");
  const int n = datasets.front().n();
  std::int64_t min_L = datasets.front().L();
  for (const auto& d : datasets) {
    if (d.n() != n)
      throw ValidationError("pooled datasets disagree on the item count");
    min_L = std::min(min_L, d.L());
  }

  std::vector<Edge> union_edges;
  std::vector<Arc> arcs;
  PairwiseObjective objective(n, {});
  for (const auto& d : datasets) {
    const double weight =
        static_cast<double>(d.L()) / static_cast<double>(min_L);
    objective.append(PairwiseObjective::from(d, weight));
    union_edges.insert(union_edges.end(), d.graph().edges().begin(),
                       d.graph().edges().end());
    const auto a = d.win_arcs();
    arcs.insert(arcs.end(), a.begin(), a.end());
  }
  std::sort(union_edges.begin(), union_edges.end());
  union_edges.erase(std::unique(union_edges.begin(), union_edges.end()),
                    union_edges.end());
  const ComparisonGraph union_graph(n, std::move(union_edges));
  const auto deg = union_graph.degrees();
  const int n_max = *std::max_element(deg.begin(), deg.end());

  const double rho = resolve_rho(config, n_max, min_L);
  if (rho == 0.0 && !is_strongly_connected(n, arcs))
    throw MleNonexistenceError(
        "the win digraph is not strongly connected, so the unregularized "
        "likelihood has no finite minimizer");
  return descend(objective, rho, objective.max_weighted_degree(), config);
}

FitResult fit_tree_closed_form(const ComparisonData& data) {
  const ComparisonGraph& g = data.graph();
  if (!is_tree(g))
    throw ValidationError("closed-form MLE needs a tree (connected, |E| = n-1)");
  const std::int64_t L = data.L();
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const std::int64_t w = data.wins()[e];
    if (w == 0 || w == L)
      throw MleNonexistenceError(
          "edge (" + std::to_string(g.edges()[e].i) + "," +
          std::to_string(g.edges()[e].j) + ") has wins in {0, L}");
  }

  const auto adj = g.adjacency_list();
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(g.n());
  std::vector<bool> seen(g.n(), false);
  std::deque<int> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : adj[u]) {
      if (seen[v]) continue;
      seen[v] = true;
      const auto e = g.edge_index(u, v);
      const double w_lo = static_cast<double>(data.wins()[e]);
      const double w_hi = static_cast<double>(L) - w_lo;
      // wins()[e] counts the smaller endpoint beating the larger one.
      const double wins_v = v < u ? w_lo : w_hi;
      const double wins_u = v < u ? w_hi : w_lo;
      theta(v) = theta(u) + std::log(wins_v) - std::log(wins_u);
      queue.push_back(v);
    }
  }

  BtlParameters estimate(theta);
  const double grad_norm =
      sup_norm(PairwiseObjective::from(data, 1.0).gradient(estimate.theta(), 0.0));
  return FitResult{std::move(estimate), 0, grad_norm, 0.0, true, {}};
}

double d_infinity(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size())
    throw ValidationError("d_infinity needs vectors of equal length");
  if (a.size() == 0) return 0.0;
  return sup_norm(centered(a) - centered(b));
}

}  // namespace btlrank
