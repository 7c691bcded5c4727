// btlrank: graph generation, simulation, fitting, bound reports and the
// Monte Carlo experiments, reading and writing JSON and CSV.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "btlrank/bounds.hpp"
#include "btlrank/errors.hpp"
#include "btlrank/estimators.hpp"
#include "btlrank/experiments.hpp"
#include "btlrank/graph.hpp"
#include "btlrank/io.hpp"
#include "btlrank/model.hpp"

namespace {

using namespace btlrank;

constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    io::write_file(out, text);
  }
}

struct GraphOptions {
  std::string topology;
  int n = 0;
  double p = 0.0;
  int k = 1;
  int d = 1;
  int m1 = 0;
  int m2 = 0;
  int islands = 3;
  int n_island = 50;
  int n_overlap = 5;
  int n1 = 0;
  int n2 = 0;
  std::int64_t bridges = 0;
  std::uint64_t seed = 0;
  std::string out;
};

ComparisonGraph generate(const GraphOptions& o) {
  const std::string& t = o.topology;
  if (t == "complete") return topology::complete(o.n);
  if (t == "path") return topology::path(o.n);
  if (t == "star") return topology::star(o.n);
  if (t == "cycle") return topology::cycle(o.n);
  if (t == "bipartite") return topology::complete_bipartite(o.m1, o.m2);
  if (t == "banded") return topology::banded(o.n, o.k);
  if (t == "cayley") return topology::cayley(o.n, o.d);
  if (t == "er") return topology::erdos_renyi(o.n, o.p, o.seed);
  if (t == "island")
    return topology::island(IslandParams{o.islands, o.n_island, o.n_overlap});
  if (t == "barbell") {
    const int n1 = o.n1 > 0 ? o.n1 : o.n / 2;
    const int n2 = o.n2 > 0 ? o.n2 : o.n - n1;
    if (o.bridges > 0)
      return topology::barbell(n1, n2, BridgeCount{o.bridges}, o.seed);
    return topology::barbell(n1, n2, BridgeDensity{o.p}, o.seed);
  }
  throw ValidationError("unknown topology '" + t + "'");
}

std::string summary_json(const SpectralSummary& s) {
  std::ostringstream out;
  out << "{\"n\": " << s.n() << ", \"num_edges\": " << s.num_edges
      << ", \"lambda2\": " << io::format_real(s.lambda2)
      << ", \"n_max\": " << s.n_max << ", \"n_min\": " << s.n_min
      << ", \"min_common_neighbors\": " << s.min_common_neighbors
      << ", \"connected\": " << (s.connected ? "true" : "false") << "}\n";
  return out.str();
}

std::optional<double> parse_rho(const std::string& text) {
  if (text == "auto") return std::nullopt;
  std::size_t used = 0;
  double rho = 0.0;
  try {
    rho = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !std::isfinite(rho) || rho < 0.0)
    throw ValidationError("--rho must be 'auto' or a real >= 0");
  return rho;
}

std::vector<double> parse_sweep(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !std::isfinite(v))
      throw ValidationError("bad --sweep value '" + item + "'");
    values.push_back(v);
  }
  if (values.empty()) throw ValidationError("--sweep is empty");
  return values;
}

std::string report_csv(const BoundReport& report) {
  std::string out = "bound,value\n";
  for (const auto& [name, value] : report)
    out += name + "," + (value ? io::format_real(*value) : "NA") + "\n";
  return out;
}

std::string report_json(const BoundReport& report) {
  std::string out = "{";
  bool first = true;
  for (const auto& [name, value] : report) {
    out += first ? "" : ", ";
    first = false;
    out += "\"" + name + "\": " + (value ? io::format_real(*value) : "null");
  }
  return out + "}\n";
}

int run(int argc, char** argv) {
  CLI::App app{"Bradley-Terry-Luce ranking: simulation, estimation, bounds"};
  app.require_subcommand(1);

  // graph gen / graph summary
  auto* graph = app.add_subcommand("graph", "Generate or summarize graphs");
  graph->require_subcommand(1);
  GraphOptions gen;
  auto* gen_cmd = graph->add_subcommand("gen", "Write a graph as JSON");
  gen_cmd->add_option("--topology", gen.topology,
                      "complete|path|star|cycle|bipartite|banded|cayley|er|"
                      "island|barbell")
      ->required();
  gen_cmd->add_option("--n", gen.n, "Number of items");
  gen_cmd->add_option("--p", gen.p, "Edge probability (er, barbell bridges)");
  gen_cmd->add_option("--k", gen.k, "Band width");
  gen_cmd->add_option("--d", gen.d, "Cayley circular distance");
  gen_cmd->add_option("--m1", gen.m1, "Bipartite side 1");
  gen_cmd->add_option("--m2", gen.m2, "Bipartite side 2");
  gen_cmd->add_option("--islands", gen.islands);
  gen_cmd->add_option("--n-island", gen.n_island);
  gen_cmd->add_option("--n-overlap", gen.n_overlap);
  gen_cmd->add_option("--n1", gen.n1, "Barbell clique 1 size");
  gen_cmd->add_option("--n2", gen.n2, "Barbell clique 2 size");
  gen_cmd->add_option("--bridges", gen.bridges, "Barbell bridge count");
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--out", gen.out, "Output path (default stdout)");
  gen_cmd->callback([&] { emit(gen.out, io::graph_to_json(generate(gen))); });

  std::string summary_graph, summary_out;
  auto* summary_cmd =
      graph->add_subcommand("summary", "Spectral summary of a graph");
  summary_cmd->add_option("--graph", summary_graph)->required();
  summary_cmd->add_option("--out", summary_out);
  summary_cmd->callback([&] {
    const auto g = io::graph_from_json(io::read_file(summary_graph));
    emit(summary_out, summary_json(spectral_summary(g)));
  });

  // simulate
  std::string sim_graph, sim_theta, sim_out;
  std::optional<double> sim_kappa;
  std::int64_t sim_L = 10;
  std::uint64_t sim_seed = 0;
  auto* sim = app.add_subcommand("simulate", "Draw comparison outcomes");
  sim->add_option("--graph", sim_graph)->required();
  auto* theta_opt = sim->add_option("--theta", sim_theta, "Scores JSON");
  sim->add_option("--kappa", sim_kappa, "Equally spaced scores with this spread")
      ->excludes(theta_opt);
  sim->add_option("--L", sim_L, "Comparisons per edge");
  sim->add_option("--seed", sim_seed);
  sim->add_option("--out", sim_out);
  sim->callback([&] {
    const auto g = io::graph_from_json(io::read_file(sim_graph));
    Eigen::VectorXd theta;
    if (!sim_theta.empty()) {
      theta = io::theta_from_json(io::read_file(sim_theta));
      if (theta.size() != g.n())
        throw ValidationError("theta length does not match graph");
    } else if (sim_kappa) {
      theta = linear_theta(g.n(), *sim_kappa).theta();
    } else {
      throw ValidationError("simulate needs --theta or --kappa");
    }
    emit(sim_out, io::data_to_json(simulate(g, theta, sim_L, sim_seed)));
  });

  // fit
  std::string fit_data, fit_out, fit_rho = "auto";
  double fit_tol = 1e-8;
  std::optional<std::int64_t> fit_iters;
  bool fit_closed = false;
  auto* fit_cmd = app.add_subcommand("fit", "Fit the (regularized) MLE");
  fit_cmd->add_option("--data", fit_data)->required();
  fit_cmd->add_option("--rho", fit_rho, "Real >= 0 or 'auto'");
  fit_cmd->add_option("--grad-tol", fit_tol);
  fit_cmd->add_option("--max-iters", fit_iters);
  fit_cmd->add_flag("--closed-form", fit_closed, "Tree closed form");
  fit_cmd->add_option("--out", fit_out);
  fit_cmd->callback([&] {
    const auto data = io::data_from_json(io::read_file(fit_data));
    if (fit_closed) {
      emit(fit_out, io::fit_to_json(fit_tree_closed_form(data)));
      return;
    }
    FitConfig cfg;
    const auto rho = parse_rho(fit_rho);
    cfg.rho_rule = rho ? RhoRule::kExplicit : RhoRule::kAuto;
    cfg.rho = rho.value_or(0.0);
    cfg.grad_tol = fit_tol;
    cfg.max_iters = fit_iters;
    const FitResult result = fit(data, cfg);
    if (!result.converged)
      std::cerr << "btlrank: warning: stopped after " << result.iterations
                << " iterations, gradient norm "
                << io::format_real(result.final_grad_norm) << "\n";
    emit(fit_out, io::fit_to_json(result));
  });

  // bounds
  std::string b_graph, b_theta, b_out, b_format = "csv", b_topology;
  std::optional<double> b_kappa, b_kappa_e, b_box, b_er_p;
  std::int64_t b_L = 10;
  double b_rho = 0.0;
  bool b_all = false;
  auto* bounds = app.add_subcommand("bounds", "Evaluate error bounds");
  bounds->add_option("--graph", b_graph)->required();
  auto* b_theta_opt = bounds->add_option("--theta", b_theta, "Scores JSON");
  bounds->add_option("--kappa", b_kappa, "Score spread (without --theta)")
      ->excludes(b_theta_opt);
  bounds->add_option("--kappa-e", b_kappa_e,
                     "Edge score spread (defaults to kappa without --theta)");
  bounds->add_option("--L", b_L);
  bounds->add_option("--rho", b_rho, "Regularization for the rho bounds");
  bounds->add_option("--B", b_box, "Box radius for constrained-MLE bounds");
  bounds->add_option("--er-p", b_er_p, "Edge probability for ER closed forms");
  bounds->add_option("--sample-topology", b_topology,
                     "complete|bipartite|path|star|barbell");
  bounds->add_flag("--all", b_all, "Include not-applicable bounds as NA");
  bounds->add_option("--format", b_format)
      ->check(CLI::IsMember({"csv", "json"}));
  bounds->add_option("--out", b_out);
  bounds->callback([&] {
    const auto g = io::graph_from_json(io::read_file(b_graph));
    BoundInputs in;
    in.spectral = spectral_summary(g);
    in.L = b_L;
    in.rho = b_rho;
    in.B = b_box;
    ReportExtras extras;
    if (!b_theta.empty()) {
      const Eigen::VectorXd theta = io::theta_from_json(io::read_file(b_theta));
      if (theta.size() != g.n())
        throw ValidationError("theta length does not match graph");
      in.kappa = kappa(theta);
      in.kappa_E = kappa_E(theta, g);
      extras.theta = theta;
    } else if (b_kappa) {
      in.kappa = *b_kappa;
      in.kappa_E = b_kappa_e.value_or(*b_kappa);
    } else {
      throw ValidationError("bounds needs --theta or --kappa");
    }
    if (b_kappa_e) in.kappa_E = *b_kappa_e;
    extras.er_p = b_er_p;
    if (!b_topology.empty()) extras.topology = b_topology;
    BoundReport report = bound_report(g, in, extras);
    if (!b_all)
      std::erase_if(report, [](const auto& kv) { return !kv.second; });
    emit(b_out, b_format == "json" ? report_json(report) : report_csv(report));
  });

  // experiment
  std::string e_name, e_sweep, e_out, e_band = "sqrt";
  ExperimentConfig e_cfg;
  std::optional<double> e_kappa;
  bool e_timing = false, e_no_fit = false;
  auto* exp = app.add_subcommand("experiment", "Run a Monte Carlo experiment");
  exp->add_option("id", e_name,
                  "island-additivity|barbell-ratio|banded-compare|path-L-sweep")
      ->required();
  exp->add_option("--trials", e_cfg.trials);
  exp->add_option("--seed", e_cfg.seed);
  exp->add_option("--sweep", e_sweep, "Comma-separated sweep values");
  exp->add_option("--kappa", e_kappa);
  exp->add_option("--L", e_cfg.L);
  exp->add_option("--n", e_cfg.n, "Items (path-L-sweep)");
  exp->add_option("--islands", e_cfg.islands);
  exp->add_option("--n-island", e_cfg.n_island);
  exp->add_option("--n-overlap", e_cfg.n_overlap);
  exp->add_option("--band", e_band)->check(CLI::IsMember({"sqrt", "n-over-log"}));
  exp->add_flag("--no-fit", e_no_fit, "barbell-ratio: bounds only");
  exp->add_flag("--timing", e_timing, "Add a runtime_s column");
  exp->add_option("--threads", e_cfg.threads);
  exp->add_option("--out", e_out);
  exp->callback([&] {
    const auto id = parse_experiment_id(e_name);
    if (!id) throw ValidationError("unknown experiment '" + e_name + "'");
    e_cfg.id = *id;
    if (!e_sweep.empty()) e_cfg.sweep = parse_sweep(e_sweep);
    e_cfg.kappa = e_kappa;
    e_cfg.band_rule = e_band == "sqrt" ? BandRule::kSqrt : BandRule::kNOverLog;
    e_cfg.fit_barbell = !e_no_fit;
    e_cfg.include_runtime = e_timing;
    emit(e_out, run_experiment(e_cfg).to_csv());
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const btlrank::NumericalError& e) {
    std::cerr << "btlrank: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const btlrank::MleNonexistenceError& e) {
    std::cerr << "btlrank: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "btlrank: " << e.what() << "\n";
    return kExitInvalid;
  }
}
