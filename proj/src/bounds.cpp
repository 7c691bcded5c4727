#include "btlrank/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "btlrank/errors.hpp"
#include "btlrank/model.hpp"

namespace btlrank {
namespace {

void require_positive_lambda2(const BoundInputs& in) {
  if (!(in.spectral.lambda2 > 1e-9))
    throw ValidationError(
        "bound undefined: algebraic connectivity is not positive");
  if (in.L < 1) throw ValidationError("bound needs L >= 1");
}

double log_n(const BoundInputs& in) { return std::log(static_cast<double>(in.n())); }

}  // namespace

double BoundInputs::r() const {
  if (kappa <= 0.0) return std::max(kappa_E, 0.0);
  return std::max(kappa_E + std::log(kappa), 0.0);
}

double linf_upper_thm1(const BoundInputs& in) {
  BoundInputs no_rho = in;
  no_rho.rho = 0.0;
  return linf_upper_thm1_rho(no_rho);
}

double linf_upper_thm1_rho(const BoundInputs& in) {
  require_positive_lambda2(in);
  const double n = in.n();
  const double L = static_cast<double>(in.L);
  const double nmax = in.spectral.n_max;
  const double nmin = in.spectral.n_min;
  const double l2 = in.spectral.lambda2;
  const double r = in.r();
  const double first = std::exp(2.0 * in.kappa_E) / l2 * (nmax / nmin) *
                       (std::sqrt((n + r) / L) +
                        in.rho * in.kappa * std::sqrt(n / nmax));
  const double second = std::exp(in.kappa_E) / l2 *
                        std::sqrt(nmax * (log_n(in) + r) / L);
  return first + second;
}

double l2_upper_thm1(const BoundInputs& in) {
  BoundInputs no_rho = in;
  no_rho.rho = 0.0;
  return l2_upper_thm1_rho(no_rho);
}

double l2_upper_thm1_rho(const BoundInputs& in) {
  require_positive_lambda2(in);
  const double n = in.n();
  const double L = static_cast<double>(in.L);
  const double nmax = in.spectral.n_max;
  return std::exp(in.kappa_E) / in.spectral.lambda2 *
         (std::sqrt(nmax * (n + in.r()) / L) +
          in.rho * in.kappa * std::sqrt(n));
}

std::optional<double> yan_linf_bound(const BoundInputs& in) {
  if (in.spectral.min_common_neighbors <= 0) return std::nullopt;
  if (in.L < 1) throw ValidationError("bound needs L >= 1");
  const double L = static_cast<double>(in.L);
  return std::exp(in.kappa) / in.spectral.min_common_neighbors *
         std::sqrt(in.spectral.n_max * log_n(in) / L);
}

double shah_l2_bound(const BoundInputs& in) {
  require_positive_lambda2(in);
  return std::exp(8.0 * in.box_radius()) * in.n() * log_n(in) /
         (in.spectral.lambda2 * static_cast<double>(in.L));
}

double hajek_l2_bound(const BoundInputs& in) {
  require_positive_lambda2(in);
  const double l2 = in.spectral.lambda2;
  return std::exp(8.0 * in.box_radius()) *
         static_cast<double>(in.spectral.num_edges) * log_n(in) /
         (l2 * l2 * static_cast<double>(in.L));
}

double minimax_lower_linf(const NormalizedLaplacianSpectrum& spectrum,
                          double kappa) {
  const Eigen::VectorXd& lambda = spectrum.eigenvalues;
  const int n = static_cast<int>(lambda.size());
  if (n < 2) throw ValidationError("lower bound needs at least two items");
  if (!(lambda(1) > 0.0))
    throw ValidationError("lower bound needs a connected graph");
  double inner = static_cast<double>(n) * n;
  for (int np = 2; np <= n; ++np) {
    const int first = static_cast<int>(std::ceil(0.99 * np));
    double sum = 0.0;
    for (int i = first; i <= np; ++i) sum += 1.0 / lambda(i - 1);
    inner = std::max(inner, sum);
  }
  const double squared = std::exp(-2.0 * kappa) /
                         (static_cast<double>(n) *
                          static_cast<double>(spectrum.n_comp)) *
                         inner;
  return std::sqrt(squared);
}

double minimax_lower_linf(const ComparisonGraph& g, std::int64_t L,
                          double kappa) {
  return minimax_lower_linf(normalized_spectrum(g, L), kappa);
}

double normalized_pinv_trace(const NormalizedLaplacianSpectrum& spectrum) {
  double trace = 0.0;
  for (Eigen::Index i = 1; i < spectrum.eigenvalues.size(); ++i)
    trace += 1.0 / spectrum.eigenvalues(i);
  return trace;
}

ErBounds er_corollary_bounds(int n, double p, std::int64_t L, double kappa_E) {
  if (!(p > 0.0 && p <= 1.0))
    throw ValidationError("Erdos-Renyi bounds need 0 < p <= 1");
  if (n < 2 || L < 1) throw ValidationError("Erdos-Renyi bounds need n >= 2, L >= 1");
  const double Ld = static_cast<double>(L);
  return {std::exp(2.0 * kappa_E) * std::sqrt(std::log(n) / (n * p * p * Ld)),
          std::exp(kappa_E) * std::sqrt(1.0 / (p * Ld))};
}

double vanilla_upper_linf(const BoundInputs& in) {
  require_positive_lambda2(in);
  const double n = in.n();
  const double L = static_cast<double>(in.L);
  const double nmax = in.spectral.n_max;
  const double nmin = in.spectral.n_min;
  const double ek = std::exp(in.kappa_E);
  const double s = std::exp(2.0 * in.kappa_E) * nmax /
                   (in.spectral.lambda2 * nmin);
  return ek * std::sqrt(nmax * log_n(in) / (L * nmin * nmin)) +
         s * std::sqrt(nmax / L) *
             (1.0 + ek * std::sqrt(log_n(in)) / nmin + s * std::sqrt(n / nmax));
}

TreeBounds tree_upper_bounds(const ComparisonGraph& tree, std::int64_t L,
                             const Eigen::VectorXd& theta) {
  if (!is_tree(tree)) throw ValidationError("tree bounds need a tree");
  if (L < 1) throw ValidationError("bound needs L >= 1");
  TreeBounds out;
  out.diameter = tree_diameter(tree);
  const double n = tree.n();
  const double Ld = static_cast<double>(L);
  const double ln_n = std::log(n);
  const double ek = std::exp(kappa_E(theta, tree));
  out.linf = ek * std::sqrt(out.diameter * ln_n / Ld);
  out.l2 = ek * std::sqrt(out.diameter * n * ln_n / Ld);
  double sum = 0.0;
  for (const Edge& e : tree.edges())
    sum += std::exp(2.0 * std::abs(theta(e.i) - theta(e.j))) * ln_n / Ld;
  out.linf_edge_exact = std::sqrt(sum);
  return out;
}

double sample_complexity(std::string_view topology, int n, double kappa_E) {
  if (n < 2) throw ValidationError("sample complexity needs n >= 2");
  const double nd = n;
  const double e2k = std::exp(2.0 * kappa_E);
  const double ln_n = std::log(nd);
  if (topology == "complete" || topology == "bipartite") return nd * nd;
  if (topology == "path") return e2k * nd * nd * ln_n;
  if (topology == "star") return e2k * nd * ln_n;
  if (topology == "barbell") return e2k * std::pow(nd, 5) * ln_n;
  throw ValidationError("unknown topology '" + std::string(topology) +
                        "' (expected complete, bipartite, path, star or "
                        "barbell)");
}

BoundReport bound_report(const ComparisonGraph& g, const BoundInputs& in,
                         const ReportExtras& extras) {
  BoundReport report;
  const bool connected = in.spectral.connected;
  auto guarded = [&](auto&& fn) -> std::optional<double> {
    if (!connected) return std::nullopt;
    return fn();
  };
  report["linf_upper_thm1"] = guarded([&] { return linf_upper_thm1(in); });
  report["linf_upper_thm1_rho"] =
      guarded([&] { return linf_upper_thm1_rho(in); });
  report["l2_upper_thm1"] = guarded([&] { return l2_upper_thm1(in); });
  report["l2_upper_thm1_rho"] = guarded([&] { return l2_upper_thm1_rho(in); });
  report["yan_linf"] = yan_linf_bound(in);
  report["shah_l2sq"] = guarded([&] { return shah_l2_bound(in); });
  report["hajek_l2sq"] = guarded([&] { return hajek_l2_bound(in); });
  report["vanilla_upper_linf"] = guarded([&] { return vanilla_upper_linf(in); });
  report["minimax_lower_linf"] = guarded([&] {
    return minimax_lower_linf(normalized_spectrum(in.spectral, in.L), in.kappa);
  });

  report["er_linf"] = std::nullopt;
  report["er_l2"] = std::nullopt;
  if (extras.er_p) {
    const ErBounds er = er_corollary_bounds(in.n(), *extras.er_p, in.L, in.kappa_E);
    report["er_linf"] = er.linf;
    report["er_l2"] = er.l2;
  }

  report["tree_linf"] = std::nullopt;
  report["tree_l2"] = std::nullopt;
  report["tree_linf_edge_exact"] = std::nullopt;
  if (is_tree(g)) {
    const double n = g.n();
    const double ln_n = std::log(n);
    const double d = tree_diameter(g);
    const double ek = std::exp(in.kappa_E);
    const double Ld = static_cast<double>(in.L);
    report["tree_linf"] = ek * std::sqrt(d * ln_n / Ld);
    report["tree_l2"] = ek * std::sqrt(d * n * ln_n / Ld);
    if (extras.theta)
      report["tree_linf_edge_exact"] =
          tree_upper_bounds(g, in.L, *extras.theta).linf_edge_exact;
  }

  report["sample_complexity"] = std::nullopt;
  if (extras.topology)
    report["sample_complexity"] =
        sample_complexity(*extras.topology, in.n(), in.kappa_E);
  return report;
}

}  // namespace btlrank
