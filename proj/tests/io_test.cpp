#include <gtest/gtest.h>

#include "btlrank/errors.hpp"
#include "btlrank/estimators.hpp"
#include "btlrank/graph.hpp"
#include "btlrank/io.hpp"
#include "btlrank/model.hpp"

namespace btlrank {
namespace {

TEST(GraphJson, RoundTripAndCanonicalOrder) {
  const ComparisonGraph g = topology::island(2, 3, 1);
  const std::string text = io::graph_to_json(g);
  EXPECT_EQ(text, R"({"edges":[[0,1],[0,2],[1,2],[2,3],[2,4],[3,4]],"n":5})" "\n");
  EXPECT_EQ(io::graph_from_json(text), g);
  EXPECT_EQ(io::graph_from_json(R"({"n":3,"edges":[[2,1],[0,1]]})").edges(),
            (std::vector<Edge>{{0, 1}, {1, 2}}));
}

TEST(GraphJson, Rejections) {
  EXPECT_THROW(io::graph_from_json("{"), FormatError);
  EXPECT_THROW(io::graph_from_json(R"({"n":3})"), FormatError);
  EXPECT_THROW(io::graph_from_json(R"({"n":3,"edges":[[0]]})"), FormatError);
  EXPECT_THROW(io::graph_from_json(R"({"n":3.5,"edges":[]})"), FormatError);
  EXPECT_THROW(io::graph_from_json(R"({"n":3,"edges":[[0,"1"]]})"), FormatError);
  EXPECT_THROW(io::graph_from_json(R"({"n":3,"edges":[[1,1]]})"), ValidationError);
  EXPECT_THROW(io::graph_from_json(R"({"n":3,"edges":[[0,1],[1,0]]})"),
               ValidationError);
  EXPECT_THROW(io::graph_from_json(R"({"n":3,"edges":[[0,3]]})"), ValidationError);
}

TEST(DataJson, RoundTrip) {
  const ComparisonGraph g = topology::complete(4);
  const ComparisonData data = simulate(g, linear_theta(4, 1.0).theta(), 12, 2);
  const ComparisonData back = io::data_from_json(io::data_to_json(data));
  EXPECT_EQ(back.graph(), g);
  EXPECT_EQ(back.L(), 12);
  EXPECT_EQ(back.wins(), data.wins());
}

TEST(DataJson, Rejections) {
  EXPECT_THROW(io::data_from_json(R"({"n":2,"L":5,"edges":[{"i":1,"j":0,"wins_i":2}]})"),
               FormatError);
  EXPECT_THROW(io::data_from_json(R"({"n":2,"L":5,"edges":[{"i":0,"j":1,"wins_i":6}]})"),
               ValidationError);
  EXPECT_THROW(io::data_from_json(R"({"n":2,"L":5,"edges":[{"i":0,"j":1}]})"),
               FormatError);
  EXPECT_THROW(io::data_from_json(R"([1,2])"), FormatError);
}

TEST(FitJson, RoundTrip) {
  const ComparisonData data = simulate(topology::cycle(5), linear_theta(5, 1.0).theta(),
                                       30, 4);
  FitConfig cfg;
  cfg.rho = 0.2;
  const FitResult fit_result = fit(data, cfg);
  const std::string text = io::fit_to_json(fit_result);
  const FitResult back = io::fit_from_json(text);
  EXPECT_EQ(back.theta_hat.theta(), fit_result.theta_hat.theta());
  EXPECT_EQ(back.iterations, fit_result.iterations);
  EXPECT_EQ(back.final_grad_norm, fit_result.final_grad_norm);
  EXPECT_EQ(back.rho_used, 0.2);
  EXPECT_EQ(back.converged, fit_result.converged);
  EXPECT_EQ(io::fit_to_json(back), text);
}

TEST(ThetaJson, BareArrayOrObject) {
  EXPECT_EQ(io::theta_from_json("[1, 2.5]").size(), 2);
  EXPECT_DOUBLE_EQ(io::theta_from_json(R"({"theta":[1,2.5]})")(1), 2.5);
  EXPECT_THROW(io::theta_from_json(R"({"theta":"x"})"), FormatError);
  EXPECT_EQ(io::theta_from_json(io::theta_to_json(linear_theta(3, 0.1).theta())),
            linear_theta(3, 0.1).theta());
}

TEST(FormatReal, SeventeenDigits) {
  EXPECT_EQ(io::format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(io::format_real(2.0), "2");
  EXPECT_EQ(std::stod(io::format_real(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(Files, MissingFileIsFormatError) {
  EXPECT_THROW(io::read_file("/nonexistent/btlrank/file.json"), Error);
}

}  // namespace
}  // namespace btlrank
