#pragma once

#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "btlrank/estimators.hpp"
#include "btlrank/graph.hpp"
#include "btlrank/model.hpp"

namespace btlrank::io {

// {"n": int, "edges": [[i, j], ...]} with canonical edge order.
std::string graph_to_json(const ComparisonGraph& g);
// Throws FormatError on malformed JSON or wrong shapes, ValidationError on
// duplicates, self-loops or out-of-range endpoints.
ComparisonGraph graph_from_json(std::string_view text);

// {"n": int, "L": int, "edges": [{"i": int, "j": int, "wins_i": int}, ...]}
std::string data_to_json(const ComparisonData& data);
ComparisonData data_from_json(std::string_view text);

// {"theta": [...], "iterations": int, "final_grad_norm": real, "rho": real,
//  "converged": bool}
std::string fit_to_json(const FitResult& fit);
FitResult fit_from_json(std::string_view text);

// Either a bare array or {"theta": [...]}.
Eigen::VectorXd theta_from_json(std::string_view text);
std::string theta_to_json(const Eigen::VectorXd& theta);

// printf "%.17g": 17 significant digits, round-trips every double.
std::string format_real(double x);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace btlrank::io
