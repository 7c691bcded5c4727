#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "btlrank/model.hpp"

namespace btlrank {

// l_rho(theta) = -sum_{(i,j) in E} [ybar_ij log psi(theta_i - theta_j)
//                 + (1 - ybar_ij) log(1 - psi(theta_i - theta_j))]
//                 + (rho / 2) ||theta||^2,
// with 0 log 0 = 0.
double neg_log_likelihood(const Eigen::VectorXd& theta,
                          const ComparisonData& data, double rho);

// rho theta + sum_E [psi(theta_i - theta_j) - ybar_ij] (e_i - e_j).
Eigen::VectorXd gradient(const Eigen::VectorXd& theta,
                         const ComparisonData& data, double rho);

// rho I + sum_E psi'(theta_i - theta_j) (e_i - e_j)(e_i - e_j)^T.
Eigen::MatrixXd hessian(const Eigen::VectorXd& theta,
                        const ComparisonData& data, double rho);

enum class RhoRule {
  kExplicit,
  // rho = sqrt(n_max / L), the kappa-free tuning rule.
  kAuto,
};

struct FitConfig {
  double rho = 0.0;
  RhoRule rho_rule = RhoRule::kExplicit;
  // Defaults to 1 / (rho + n_max).
  std::optional<double> step_size;
  // Defaults to 200 n (1 + n_max / rho) capped at 5e6 for rho > 0, and 1e6
  // for rho = 0.
  std::optional<std::int64_t> max_iters;
  // Sup-norm of the gradient at which descent stops.
  double grad_tol = 1e-8;
  // Record l_rho at every iterate (including the start) in FitResult.
  bool trace_objective = false;
};

struct FitResult {
  BtlParameters theta_hat;
  std::int64_t iterations = 0;
  double final_grad_norm = 0.0;
  double rho_used = 0.0;
  bool converged = false;
  std::vector<double> objective_trace;
};

double auto_rho(int n_max, std::int64_t L);

// Regularized (rho > 0) or vanilla (rho = 0) MLE on the centered hyperplane
// by gradient descent from theta = 0.
//
// Throws MleNonexistenceError when rho = 0 and the win digraph is not
// strongly connected, NumericalError when the objective turns non-finite.
FitResult fit(const ComparisonData& data, const FitConfig& config = {});

// Joint fit over several datasets on the same item set, e.g. cliques compared
// L = 10 times and bridges compared L = 100 times. Each dataset's likelihood
// terms are weighted by L_d / min_d L_d, so a single dataset reduces to fit().
// The auto rule uses the smallest L and the maximum degree of the union
// graph; the default step is 1 / (rho + max weighted degree).
FitResult fit_pooled(std::span<const ComparisonData> datasets,
                     const FitConfig& config = {});

// Vanilla MLE on a tree by accumulating log-odds log(w_ji / w_ij) along the
// unique path from node 0, then centering. Throws ValidationError for
// non-trees and MleNonexistenceError when some edge has wins in {0, L}.
FitResult fit_tree_closed_form(const ComparisonData& data);

// || (a - avg(a)) - (b - avg(b)) ||_inf.
double d_infinity(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

}  // namespace btlrank
