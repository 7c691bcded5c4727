#include <algorithm>
#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "btlrank/errors.hpp"
#include "btlrank/experiments.hpp"

namespace btlrank {
namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

TEST(ExperimentIds, RoundTrip) {
  for (auto id : {ExperimentId::kIslandAdditivity, ExperimentId::kBarbellRatio,
                  ExperimentId::kBandedCompare, ExperimentId::kPathLSweep})
    EXPECT_EQ(parse_experiment_id(experiment_name(id)), id);
  EXPECT_FALSE(parse_experiment_id("nope").has_value());
}

TEST(Quantile, LinearInterpolation) {
  EXPECT_DOUBLE_EQ(quantile({3, 1, 2, 4}, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(quantile({1, 2, 3, 4, 5}, 0.05), 1.2);
  EXPECT_DOUBLE_EQ(quantile({7}, 0.95), 7);
  EXPECT_TRUE(std::isnan(quantile({}, 0.5)));
}

TEST(IslandAdditivity, NoiseFreeLimit) {
  ExperimentConfig cfg;
  cfg.id = ExperimentId::kIslandAdditivity;
  cfg.trials = 1;
  cfg.sweep = {0.0};
  cfg.L = 1000000;
  const ExperimentResult result = run_experiment(cfg);
  ASSERT_EQ(result.records.size(), 2u);
  for (const auto& r : result.records) {
    EXPECT_EQ(r.status, "ok");
    EXPECT_LT(*r.linf_error, 0.05) << r.estimator;
  }
}

TEST(IslandAdditivity, AddBeatsJointAtModerateShift) {
  ExperimentConfig cfg;
  cfg.id = ExperimentId::kIslandAdditivity;
  cfg.trials = 20;
  cfg.sweep = {2.0};
  cfg.seed = 4;
  const ExperimentResult result = run_experiment(cfg);
  EXPECT_EQ(result.values(2.0, "add", "linf_error").size(), 20u);
  EXPECT_LT(result.mean(2.0, "add", "linf_error"),
            result.mean(2.0, "joint", "linf_error"));
}

TEST(IslandAdditivity, SmallLayoutCsvShape) {
  ExperimentConfig cfg;
  cfg.id = ExperimentId::kIslandAdditivity;
  cfg.trials = 3;
  cfg.sweep = {0.0, 2.0};
  cfg.islands = 3;
  cfg.n_island = 10;
  cfg.n_overlap = 2;
  const ExperimentResult result = run_experiment(cfg);
  const auto lines = lines_of(result.to_csv());
  EXPECT_EQ(lines[0], "kind,sweep,trial,estimator,status,linf_error,l2_error,kappa_E");
  // 2 sweeps x 3 trials x 2 estimators, then 5 summaries per group.
  EXPECT_EQ(lines.size(), 1u + 12u + 2u * 2u * 5u);
  for (std::size_t k = 1; k < lines.size(); ++k)
    EXPECT_EQ(fields_of(lines[k]).size(), 8u) << lines[k];
  EXPECT_EQ(fields_of(lines[13])[0], "mean");
  EXPECT_EQ(fields_of(lines[13])[2], "3");
  for (const auto& r : result.records) EXPECT_GE(*r.linf_error, 0.0);
}

TEST(Reproducibility, ByteIdenticalAndThreadIndependent) {
  ExperimentConfig cfg;
  cfg.id = ExperimentId::kBandedCompare;
  cfg.trials = 4;
  cfg.sweep = {30, 40};
  cfg.seed = 77;
  cfg.threads = 1;
  const std::string serial = run_experiment(cfg).to_csv();
  cfg.threads = 4;
  EXPECT_EQ(run_experiment(cfg).to_csv(), serial);
  EXPECT_EQ(run_experiment(cfg).to_csv(), serial);
  cfg.seed = 78;
  EXPECT_NE(run_experiment(cfg).to_csv(), serial);
}

TEST(BandedCompare, KappaEBelowKappa) {
  ExperimentConfig cfg;
  cfg.id = ExperimentId::kBandedCompare;
  cfg.trials = 2;
  cfg.sweep = {30, 60};
  for (BandRule rule : {BandRule::kSqrt, BandRule::kNOverLog}) {
    cfg.band_rule = rule;
    const ExperimentResult result = run_experiment(cfg);
    for (const auto& r : result.records) {
      ASSERT_EQ(r.status, "ok");
      EXPECT_LT(*r.extras[2], *r.extras[1]);
      EXPECT_LT(*r.extras[3], *r.extras[4]);
    }
  }
}

TEST(BarbellRatio, ColumnsAndErrorCap) {
  ExperimentConfig cfg;
  cfg.id = ExperimentId::kBarbellRatio;
  cfg.trials = 2;
  cfg.sweep = {20, 40};
  const ExperimentResult result = run_experiment(cfg);
  EXPECT_EQ(result.extra_columns,
            (std::vector<std::string>{"lambda2", "min_common_neighbors", "kappa_E",
                                      "thm1_linf", "yan_linf", "ratio"}));
  for (const auto& r : result.records) {
    ASSERT_EQ(r.status, "ok");
    EXPECT_LE(*r.linf_error, 5.0);
    ASSERT_TRUE(r.extras[5].has_value());
    EXPECT_NEAR(*r.extras[5], *r.extras[3] / *r.extras[4], 1e-12);
  }
  cfg.fit_barbell = false;
  for (const auto& r : run_experiment(cfg).records) EXPECT_FALSE(r.linf_error);
}

TEST(PathLSweep, NonexistenceRowsAndRate) {
  ExperimentConfig cfg;
  cfg.id = ExperimentId::kPathLSweep;
  cfg.trials = 10;
  cfg.sweep = {1, 1000, 100000};
  const ExperimentResult result = run_experiment(cfg);
  int nonexistent = 0;
  for (const auto& r : result.records)
    if (r.sweep == 1) {
      EXPECT_EQ(r.status, "mle_nonexistent");
      EXPECT_FALSE(r.linf_error.has_value());
      ++nonexistent;
    }
  EXPECT_EQ(nonexistent, 10);
  EXPECT_LT(quantile(result.values(100000, "closed_form", "linf_error"), 0.5),
            quantile(result.values(1000, "closed_form", "linf_error"), 0.5));
  const std::string csv = result.to_csv();
  EXPECT_NE(csv.find("trial,1,0,closed_form,mle_nonexistent,NA,NA"), std::string::npos);
  EXPECT_NE(csv.find("mean,1,0,closed_form,summary,NA,NA"), std::string::npos);
}

TEST(RuntimeColumn, OptIn) {
  ExperimentConfig cfg;
  cfg.id = ExperimentId::kPathLSweep;
  cfg.trials = 1;
  cfg.sweep = {100};
  EXPECT_EQ(lines_of(run_experiment(cfg).to_csv())[0].find("runtime_s"),
            std::string::npos);
  cfg.include_runtime = true;
  EXPECT_NE(lines_of(run_experiment(cfg).to_csv())[0].find("runtime_s"),
            std::string::npos);
}

TEST(Config, Validation) {
  ExperimentConfig cfg;
  cfg.trials = 0;
  EXPECT_THROW(run_experiment(cfg), ValidationError);
}

}  // namespace
}  // namespace btlrank
