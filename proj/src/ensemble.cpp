#include "btlrank/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>

#include "btlrank/errors.hpp"

namespace btlrank {
namespace {

std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

bool includes(const std::vector<int>& outer, const std::vector<int>& inner) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

int pick_anchor(std::optional<int> requested, const std::vector<int>& allowed,
                const char* name) {
  if (allowed.empty())
    throw ValidationError(std::string("anchor ") + name +
                          " has an empty intersection to choose from");
  if (!requested) return allowed.front();
  if (!std::binary_search(allowed.begin(), allowed.end(), *requested))
    throw ValidationError(std::string("anchor ") + name + " = " +
                          std::to_string(*requested) +
                          " is not in the required intersection");
  return *requested;
}

}  // namespace

SubgraphFit::SubgraphFit(std::vector<int> index_set,
                         Eigen::VectorXd theta_local, std::int64_t L_used)
    : index_set_(std::move(index_set)),
      theta_local_(std::move(theta_local)),
      L_used_(L_used) {
  if (index_set_.empty()) throw ValidationError("empty subgraph index set");
  if (static_cast<Eigen::Index>(index_set_.size()) != theta_local_.size())
    throw ValidationError("index set and local estimate differ in length");
  if (!std::is_sorted(index_set_.begin(), index_set_.end()) ||
      std::adjacent_find(index_set_.begin(), index_set_.end()) !=
          index_set_.end())
    throw ValidationError("subgraph index set must be sorted and distinct");
  if (index_set_.front() < 0)
    throw ValidationError("subgraph index set has a negative index");
  if (!theta_local_.allFinite())
    throw ValidationError("local estimate has non-finite entries");
  theta_local_ = centered(theta_local_);
}

bool SubgraphFit::contains(int node) const {
  return std::binary_search(index_set_.begin(), index_set_.end(), node);
}

double SubgraphFit::at(int node) const {
  const auto it = std::lower_bound(index_set_.begin(), index_set_.end(), node);
  if (it == index_set_.end() || *it != node)
    throw ValidationError("node " + std::to_string(node) +
                          " is not covered by this subgraph fit");
  return theta_local_(it - index_set_.begin());
}

BtlParameters add_mle_three(int n, const SubgraphFit& fit1,
                            const SubgraphFit& fit2, const SubgraphFit& fit3,
                            std::optional<int> t1, std::optional<int> t2) {
  const auto& i1 = fit1.index_set();
  const auto& i2 = fit2.index_set();
  const auto& i3 = fit3.index_set();
  const SubgraphFit* fits[] = {&fit1, &fit2, &fit3};
  for (int a = 0; a < 3; ++a) {
    if (fits[a]->index_set().back() >= n)
      throw ValidationError("subset " + std::to_string(a + 1) +
                            " has an index outside [0, n)");
    for (int b = 0; b < 3; ++b)
      if (a != b && includes(fits[b]->index_set(), fits[a]->index_set()))
        throw ValidationError("subset " + std::to_string(a + 1) +
                              " is contained in subset " +
                              std::to_string(b + 1));
  }

  const int anchor1 = pick_anchor(t1, intersect(i1, i3), "t1");
  const int anchor2 = pick_anchor(t2, intersect(i2, i3), "t2");
  const double delta3 = fit1.at(anchor1) - fit3.at(anchor1);
  const double delta2 = fit3.at(anchor2) - fit2.at(anchor2);

  Eigen::VectorXd theta(n);
  std::vector<bool> covered(n, false);
  auto assign = [&](int v, double value) {
    theta(v) = value;
    covered[v] = true;
  };
  for (int v : i1) assign(v, fit1.at(v));
  for (int v : i2)
    if (!fit1.contains(v)) assign(v, fit2.at(v) + delta3 + delta2);
  for (int v : i3)
    if (!fit1.contains(v) && !fit2.contains(v)) assign(v, fit3.at(v) + delta3);
  for (int v = 0; v < n; ++v)
    if (!covered[v])
      throw ValidationError("node " + std::to_string(v) +
                            " is not covered by any subset");
  return BtlParameters(std::move(theta));
}

BtlParameters add_mle_island_chain(std::span<const SubgraphFit> fits,
                                   const IslandParams& params) {
  if (fits.empty()) throw ValidationError("island chain needs at least one fit");
  if (static_cast<int>(fits.size()) != params.islands)
    throw ValidationError("expected " + std::to_string(params.islands) +
                          " island fits, got " + std::to_string(fits.size()));
  if (params.islands > 1 && params.n_overlap < 1)
    throw ValidationError("island chain needs nonempty overlaps");
  for (int k = 0; k < params.islands; ++k)
    if (fits[k].index_set() != params.block(k))
      throw ValidationError("fit " + std::to_string(k) +
                            " does not match island block " +
                            std::to_string(k));

  const int n = params.n();
  Eigen::VectorXd theta(n);
  double shift = 0.0;
  for (int k = 0; k < params.islands; ++k) {
    if (k > 0) {
      const int anchor = params.block_start(k);
      shift += fits[k - 1].at(anchor) - fits[k].at(anchor);
    }
    for (int v : fits[k].index_set()) theta(v) = fits[k].at(v) + shift;
  }
  return BtlParameters(std::move(theta));
}

BtlParameters add_mle_barbell(const SubgraphFit& fit1, const SubgraphFit& fit2,
                              const ComparisonData& data,
                              std::span<const Edge> bridge_edges,
                              ClipBounds clip) {
  if (bridge_edges.empty()) throw ValidationError("empty bridge set");
  if (!(0.0 < clip.lower && clip.lower < clip.upper && clip.upper < 1.0))
    throw ValidationError("clip bounds must satisfy 0 < lower < upper < 1");
  const int n = data.n();
  if (!intersect(fit1.index_set(), fit2.index_set()).empty())
    throw ValidationError("barbell blocks must be disjoint");
  if (fit1.size() + fit2.size() != n || fit1.index_set().back() >= n ||
      fit2.index_set().back() >= n)
    throw ValidationError("barbell blocks must partition the item set");

  double shift_sum = 0.0;
  for (Edge e : bridge_edges) {
    const auto idx = data.graph().edge_index(e.i, e.j);
    if (idx < 0)
      throw ValidationError("bridge (" + std::to_string(e.i) + "," +
                            std::to_string(e.j) + ") has no comparisons");
    const Edge canon = data.graph().edges()[idx];
    double p = data.ybar(idx);  // P(canon.i beats canon.j)
    int a = canon.i, b = canon.j;
    if (fit2.contains(a) && fit1.contains(b)) {
      std::swap(a, b);
      p = 1.0 - p;
    } else if (!(fit1.contains(a) && fit2.contains(b))) {
      throw ValidationError("bridge (" + std::to_string(e.i) + "," +
                            std::to_string(e.j) +
                            ") does not join the two blocks");
    }
    p = std::clamp(p, clip.lower, clip.upper);
    const double log_odds = std::log(p / (1.0 - p));
    shift_sum += log_odds - (fit1.at(a) - fit2.at(b));
  }
  const double shift = shift_sum / static_cast<double>(bridge_edges.size());

  Eigen::VectorXd theta(n);
  for (int v : fit1.index_set()) theta(v) = fit1.at(v);
  for (int v : fit2.index_set()) theta(v) = fit2.at(v) - shift;
  return BtlParameters(std::move(theta));
}

}  // namespace btlrank
