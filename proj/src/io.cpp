#include "btlrank/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "btlrank/errors.hpp"
#include "json.hpp"

namespace btlrank::io {
namespace {

using nlohmann::json;

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw FormatError(e.what());
  }
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw FormatError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

// Integers only; rejects 1.5 and "3".
std::int64_t integer(const json& j, const char* what) {
  if (!j.is_number_integer())
    throw FormatError(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

json real_array(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Eigen::VectorXd parse_real_array(const json& arr) {
  if (!arr.is_array()) throw FormatError("expected an array of numbers");
  Eigen::VectorXd v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) throw FormatError("expected an array of numbers");
    v(i) = arr[i].get<double>();
  }
  return v;
}

}  // namespace

std::string graph_to_json(const ComparisonGraph& g) {
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.i, e.j});
  return json{{"n", g.n()}, {"edges", edges}}.dump() + "\n";
}

ComparisonGraph graph_from_json(std::string_view text) {
  const json j = parse(text);
  if (!j.is_object()) throw FormatError("graph must be a JSON object");
  const auto n = integer(field<json>(j, "n"), "n");
  const json edges = field<json>(j, "edges");
  if (!edges.is_array()) throw FormatError("'edges' must be an array");
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (const json& e : edges) {
    if (!e.is_array() || e.size() != 2)
      throw FormatError("each edge must be a pair [i, j]");
    out.push_back({static_cast<int>(integer(e[0], "edge endpoint")),
                   static_cast<int>(integer(e[1], "edge endpoint"))});
  }
  return ComparisonGraph(static_cast<int>(n), std::move(out));
}

std::string data_to_json(const ComparisonData& data) {
  json edges = json::array();
  const auto& es = data.graph().edges();
  for (std::size_t e = 0; e < es.size(); ++e)
    edges.push_back({{"i", es[e].i}, {"j", es[e].j}, {"wins_i", data.wins()[e]}});
  return json{{"n", data.n()}, {"L", data.L()}, {"edges", edges}}.dump() + "\n";
}

ComparisonData data_from_json(std::string_view text) {
  const json j = parse(text);
  if (!j.is_object()) throw FormatError("data must be a JSON object");
  const auto n = integer(field<json>(j, "n"), "n");
  const auto L = integer(field<json>(j, "L"), "L");
  const json edges = field<json>(j, "edges");
  if (!edges.is_array()) throw FormatError("'edges' must be an array");
  struct Row {
    Edge e;
    std::int64_t wins;
  };
  std::vector<Row> rows;
  for (const json& e : edges) {
    const int a = static_cast<int>(integer(field<json>(e, "i"), "i"));
    const int b = static_cast<int>(integer(field<json>(e, "j"), "j"));
    const auto w = integer(field<json>(e, "wins_i"), "wins_i");
    if (a >= b)
      throw FormatError("data edges must be canonical (i < j), got (" +
                        std::to_string(a) + "," + std::to_string(b) + ")");
    rows.push_back({{a, b}, w});
  }
  std::vector<Edge> graph_edges;
  for (const Row& r : rows) graph_edges.push_back(r.e);
  ComparisonGraph g(static_cast<int>(n), std::move(graph_edges));
  std::vector<std::int64_t> wins(g.num_edges());
  for (const Row& r : rows) wins[g.edge_index(r.e.i, r.e.j)] = r.wins;
  return ComparisonData(std::move(g), L, std::move(wins));
}

std::string fit_to_json(const FitResult& fit) {
  return json{{"theta", real_array(fit.theta_hat.theta())},
              {"iterations", fit.iterations},
              {"final_grad_norm", fit.final_grad_norm},
              {"rho", fit.rho_used},
              {"converged", fit.converged}}
             .dump() +
         "\n";
}

FitResult fit_from_json(std::string_view text) {
  const json j = parse(text);
  FitResult out{BtlParameters(parse_real_array(field<json>(j, "theta"))),
                integer(field<json>(j, "iterations"), "iterations"),
                field<double>(j, "final_grad_norm"), field<double>(j, "rho"),
                field<bool>(j, "converged"), {}};
  return out;
}

Eigen::VectorXd theta_from_json(std::string_view text) {
  const json j = parse(text);
  if (j.is_array()) return parse_real_array(j);
  return parse_real_array(field<json>(j, "theta"));
}

std::string theta_to_json(const Eigen::VectorXd& theta) {
  return json{{"theta", real_array(theta)}}.dump() + "\n";
}

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << contents;
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace btlrank::io
