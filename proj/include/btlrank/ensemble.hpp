#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "btlrank/graph.hpp"
#include "btlrank/model.hpp"

namespace btlrank {

// An estimate of the scores of the items in `index_set`, fitted on the
// subgraph they induce.
class SubgraphFit {
 public:
  // index_set must be nonempty, sorted and distinct, and match the length of
  // theta_local. theta_local is stored centered.
  SubgraphFit(std::vector<int> index_set, Eigen::VectorXd theta_local,
              std::int64_t L_used);

  const std::vector<int>& index_set() const { return index_set_; }
  const Eigen::VectorXd& theta_local() const { return theta_local_; }
  std::int64_t L_used() const { return L_used_; }
  int size() const { return static_cast<int>(index_set_.size()); }

  bool contains(int node) const;
  // Local estimate for a global node index. Throws if absent.
  double at(int node) const;

 private:
  std::vector<int> index_set_;
  Eigen::VectorXd theta_local_;
  std::int64_t L_used_;
};

// Three-subset add-MLE over items {0..n-1}:
//   I1 keeps fit1; S3 = I3 \ (I1 ∪ I2) gets fit3 + delta3;
//   S2 = I2 \ I1 gets fit2 + delta3 + delta2,
// with delta3 = fit1(t1) - fit3(t1), delta2 = fit3(t2) - fit2(t2); then
// centered. Anchors default to the smallest index of I1 ∩ I3 and I2 ∩ I3.
// The d_inf error is at most 4 times the sum of the local d_inf errors.
BtlParameters add_mle_three(int n, const SubgraphFit& fit1,
                            const SubgraphFit& fit2, const SubgraphFit& fit3,
                            std::optional<int> t1 = std::nullopt,
                            std::optional<int> t2 = std::nullopt);

// Chains local fits of consecutive islands. Island k is shifted by
//   s_k = s_{k-1} + fit_{k-1}(a_k) - fit_k(a_k),  s_0 = 0,
// where a_k is the first node of the overlap between islands k-1 and k.
// Nodes shared by two islands take the later island's shifted value.
BtlParameters add_mle_island_chain(std::span<const SubgraphFit> fits,
                                   const IslandParams& params);

struct ClipBounds {
  double lower = 0.1;
  double upper = 0.9;
};

// Two-clique add-MLE. For each bridge (i, j), i in fit1's set and j in
// fit2's, the clipped empirical log-odds d_e estimates theta_i - theta_j;
// fit2 is shifted down by the mean of s_e = d_e - (fit1(i) - fit2(j)).
// `data` supplies the bridge outcomes on the global item set.
BtlParameters add_mle_barbell(const SubgraphFit& fit1, const SubgraphFit& fit2,
                              const ComparisonData& data,
                              std::span<const Edge> bridge_edges,
                              ClipBounds clip = {});

}  // namespace btlrank
