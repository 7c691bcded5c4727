#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "btlrank/graph.hpp"

namespace btlrank {

// Error-bound formulas with every leading constant set to 1 and natural
// logarithms throughout. Values are orders of magnitude for comparing bounds
// and trends, not calibrated error predictions.
inline constexpr std::string_view kBoundDisclaimer =
    "leading constants set to 1; compare trends, not magnitudes";

struct BoundInputs {
  SpectralSummary spectral;
  std::int64_t L = 1;
  double kappa = 0.0;
  double kappa_E = 0.0;
  double rho = 0.0;
  // Box radius for the constrained-MLE bounds; kappa / 2 when unset.
  std::optional<double> B;

  int n() const { return spectral.n(); }
  // kappa_E + ln(kappa), clamped below at 0.
  double r() const;
  double box_radius() const { return B.value_or(kappa / 2.0); }
};

// Optimal-rho l_inf bound:
//   e^{2 kE}/l2 * nmax/nmin * sqrt((n + r)/L) + e^{kE}/l2 * sqrt(nmax (ln n + r)/L)
double linf_upper_thm1(const BoundInputs& in);
// Same bound for an explicit rho, adding rho*kappa*sqrt(n/nmax) inside the
// first bracket.
double linf_upper_thm1_rho(const BoundInputs& in);
// e^{kE}/l2 * sqrt(nmax (n + r)/L)
double l2_upper_thm1(const BoundInputs& in);
// e^{kE}/l2 * (sqrt(nmax (n + r)/L) + rho*kappa*sqrt(n))
double l2_upper_thm1_rho(const BoundInputs& in);

// e^kappa / min n_ij * sqrt(nmax ln n / L); nullopt when some pair of items
// has no common neighbor, where the bound does not apply.
std::optional<double> yan_linf_bound(const BoundInputs& in);

// Squared-l2 bounds of the box-constrained MLE.
double shah_l2_bound(const BoundInputs& in);   // e^{8B} n ln n / (l2 L)
double hajek_l2_bound(const BoundInputs& in);  // e^{8B} |E| ln n / (l2^2 L)

// Square root of
//   e^{-2 kappa}/(n N_comp) * max{n^2, max_{n'=2..n} sum_{i=ceil(0.99 n')}^{n'} 1/lambda_i}
// over the normalized-Laplacian spectrum (1-based ascending indices).
double minimax_lower_linf(const ComparisonGraph& g, std::int64_t L,
                          double kappa);
double minimax_lower_linf(const NormalizedLaplacianSpectrum& spectrum,
                          double kappa);

// tr(pseudo-inverse) of the normalized Laplacian: sum of 1/lambda_i, i >= 2.
double normalized_pinv_trace(const NormalizedLaplacianSpectrum& spectrum);

struct ErBounds {
  double linf = 0.0;  // e^{2 kE} sqrt(ln n / (n p^2 L))
  double l2 = 0.0;    // e^{kE} sqrt(1 / (p L))
};
ErBounds er_corollary_bounds(int n, double p, std::int64_t L, double kappa_E);

// Vanilla-MLE l_inf bound with s = e^{2 kE} nmax / (l2 nmin):
//   e^{kE} sqrt(nmax ln n / (L nmin^2))
//   + s sqrt(nmax/L) [1 + e^{kE} sqrt(ln n)/nmin + s sqrt(n/nmax)]
double vanilla_upper_linf(const BoundInputs& in);

struct TreeBounds {
  int diameter = 0;
  double linf = 0.0;             // e^{kE} sqrt(D ln n / L)
  double l2 = 0.0;               // e^{kE} sqrt(D n ln n / L)
  double linf_edge_exact = 0.0;  // sqrt(sum_E e^{2|gap_e|} ln n / L)
};
TreeBounds tree_upper_bounds(const ComparisonGraph& tree, std::int64_t L,
                             const Eigen::VectorXd& theta);

// Comparison count N_comp needed for o(1) l_inf error, as a rate with
// constant 1: complete / bipartite n^2, path e^{2kE} n^2 ln n,
// star e^{2kE} n ln n, barbell e^{2kE} n^5 ln n.
double sample_complexity(std::string_view topology, int n, double kappa_E);

// Optional context for the bounds that need more than BoundInputs.
struct ReportExtras {
  // True scores; enables the edge-exact tree bound.
  std::optional<Eigen::VectorXd> theta;
  // Edge probability, for the Erdos-Renyi closed forms.
  std::optional<double> er_p;
  // Topology name for sample_complexity.
  std::optional<std::string> topology;
};

// Every bound keyed by name; nullopt marks "not applicable".
using BoundReport = std::map<std::string, std::optional<double>>;
BoundReport bound_report(const ComparisonGraph& g, const BoundInputs& in,
                         const ReportExtras& extras = {});

}  // namespace btlrank
