#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gstarx/errors.hpp"
#include "gstarx/explain.hpp"
#include "gstarx/json_io.hpp"
#include "gstarx/mc.hpp"
#include "gstarx/metrics.hpp"
#include "gstarx/oracle.hpp"
#include "gstarx/payoff.hpp"
#include "gstarx/values.hpp"

namespace {

using namespace gstarx;

constexpr int kExitInput = 2;
constexpr int kExitNoConvergence = 3;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

struct GameInputs {
  Graph graph;
  std::unique_ptr<CharacteristicFunction> game;
  std::unique_ptr<ToyModelScorer> scorer;  // set when a model was given
  Eigen::VectorXd baseline;                // zero vector unless --f0 given
  int c_star = 0;                          // model mode only
};

GameInputs load_inputs(const std::string& graph_path,
                       const std::string& payoff_path,
                       const std::string& model_path,
                       const std::string& f0_path) {
  if (payoff_path.empty() == model_path.empty())
    throw InvalidInputError("give exactly one of --payoff or --model");
  if (!f0_path.empty() && model_path.empty())
    throw InvalidInputError("--f0 only applies to --model runs");

  Graph g = load_graph_file(graph_path, &std::cerr);
  GameInputs in{std::move(g), nullptr, nullptr, Eigen::VectorXd(), 0};

  if (!payoff_path.empty()) {
    auto game = load_payoff_file(payoff_path);
    if (game->players() != in.graph.node_count())
      throw DimensionMismatchError("payoff table players do not match the graph");
    in.game = std::move(game);
    return in;
  }

  in.scorer = std::make_unique<ToyModelScorer>(load_model_file(model_path));
  if (!f0_path.empty()) {
    in.baseline = baseline_expectation(
        *in.scorer, load_dataset_file(f0_path, &std::cerr));
  } else {
    std::cerr << "warning: no --f0 dataset given; baseline defaults to the "
                 "zero vector\n";
    in.baseline = Eigen::VectorXd::Zero(in.scorer->class_count());
  }
  auto game = std::make_unique<GstarxGame>(*in.scorer, in.graph, in.baseline);
  in.c_star = game->predicted_class();
  in.game = std::move(game);
  return in;
}

void warn_tau(int n, double tau) {
  if (!tau_within_sufficient_bound(n, tau))
    std::cerr << "warning: tau=" << tau
              << " lies outside the sufficient convergence range (0, "
              << 2.0 / n << "); the squaring may not settle\n";
}

ValueVector run_method(const std::string& method, const Graph& g,
                       const CharacteristicFunction& v, double tau,
                       int max_sample_size, int samples, std::uint64_t seed,
                       int threads, int exact_cap, int matrix_cap,
                       std::vector<int>* coverage) {
  HnOptions hn;
  hn.threads = threads;
  hn.matrix_cap = matrix_cap;
  if (method == "shapley") return shapley_exact(v, exact_cap, threads);
  if (method == "myerson") return myerson(g, v, exact_cap, threads);
  if (method == "cshapley") return cshapley_corrected_all(g, v, exact_cap);
  if (method == "hn") {
    warn_tau(g.node_count(), tau);
    return compute_hn(g, v, tau, hn);
  }
  if (method == "hn-mc") {
    McConfig cfg;
    cfg.max_sample_size = max_sample_size;
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.tau = tau;
    cfg.hn = hn;
    McResult mc = compute_hn_mc(g, v, cfg);
    if (coverage) *coverage = mc.uncovered;
    return mc.value;
  }
  throw InvalidInputError("unknown method \"" + method +
                          "\"; expected shapley|hn|hn-mc|myerson|cshapley");
}

int cmd_score(const std::string& graph_path, const std::string& payoff_path,
              const std::string& model_path, const std::string& f0_path,
              const std::string& method, std::optional<double> tau_opt,
              int max_sample_size, std::optional<int> samples_opt,
              std::uint64_t seed, int threads, int exact_cap, int matrix_cap) {
  GameInputs in = load_inputs(graph_path, payoff_path, model_path, f0_path);
  const int n = in.graph.node_count();
  const double tau = tau_opt.value_or(default_tau(n));
  const int samples = samples_opt.value_or(n);

  std::vector<int> coverage;
  ValueVector vv =
      run_method(method, in.graph, *in.game, tau, max_sample_size, samples,
                 seed, threads, exact_cap, matrix_cap, &coverage);
  Json out = to_json(vv);
  if (method == "hn-mc") out["coverage"] = coverage;
  std::cout << dump_pretty(out);
  return 0;
}

int cmd_explain(const std::string& graph_path, const std::string& model_path,
                const std::string& f0_path, double gamma,
                std::optional<double> tau_opt, int max_exact,
                std::optional<int> samples_opt, std::uint64_t seed,
                bool with_metrics, int threads, int matrix_cap) {
  GameInputs in = load_inputs(graph_path, "", model_path, f0_path);
  ExplainOptions opts;
  opts.gamma = gamma;
  opts.tau = tau_opt;
  opts.max_exact = max_exact;
  opts.samples = samples_opt;
  opts.seed = seed;
  opts.with_metrics = with_metrics;
  opts.threads = threads;
  opts.hn.matrix_cap = matrix_cap;
  warn_tau(in.graph.node_count(),
           tau_opt.value_or(default_tau(in.graph.node_count())));
  ExplanationReport report =
      gstarx_explain(in.graph, *in.scorer, in.baseline, opts);
  std::cout << dump_pretty(to_json(report));
  return 0;
}

int cmd_compare(const std::string& graph_path, const std::string& payoff_path,
                const std::string& model_path, const std::string& f0_path,
                const std::string& methods_csv, std::optional<double> tau_opt,
                int max_sample_size, std::optional<int> samples_opt,
                std::uint64_t seed, bool with_metrics,
                std::optional<double> gamma, int threads, int exact_cap,
                int matrix_cap) {
  GameInputs in = load_inputs(graph_path, payoff_path, model_path, f0_path);
  const int n = in.graph.node_count();
  const double tau = tau_opt.value_or(default_tau(n));
  const int samples = samples_opt.value_or(n);

  std::vector<std::string> methods;
  std::stringstream ss(methods_csv);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) methods.push_back(item);
  if (methods.empty()) throw InvalidInputError("--methods is empty");

  if (with_metrics && (!in.scorer || !gamma))
    throw InvalidInputError("--metrics needs --model and --gamma");

  std::vector<ValueVector> results;
  for (const std::string& m : methods)
    results.push_back(run_method(m, in.graph, *in.game, tau, max_sample_size,
                                 samples, seed, threads, exact_cap, matrix_cap,
                                 nullptr));

  std::ostringstream csv;
  csv << "node";
  for (const std::string& m : methods) csv << "," << m;
  csv << "\n";
  for (int i = 0; i < n; ++i) {
    csv << i;
    for (const ValueVector& vv : results) csv << "," << fmt(vv.phi[i]);
    csv << "\n";
  }

  if (with_metrics) {
    const int k = std::max(1, static_cast<int>(*gamma * n));
    std::vector<MetricsBlock> blocks;
    for (const ValueVector& vv : results) {
      Coalition sel;
      const std::vector<int> order = rank_nodes(vv.phi);
      for (int r = 0; r < k; ++r) sel.insert(order[r]);
      blocks.push_back(compute_metrics(*in.scorer, in.graph, sel, in.c_star,
                                       in.baseline, vv.phi));
    }
    auto row = [&](const char* name, auto pick) {
      csv << name;
      for (const MetricsBlock& b : blocks) csv << "," << fmt(pick(b));
      csv << "\n";
    };
    row("fidelity", [](const MetricsBlock& b) { return b.fidelity; });
    row("inv_fidelity", [](const MetricsBlock& b) { return b.inv_fidelity; });
    row("sparsity", [](const MetricsBlock& b) { return b.sparsity; });
    row("n_fidelity", [](const MetricsBlock& b) { return b.n_fidelity; });
    row("n_inv_fidelity",
        [](const MetricsBlock& b) { return b.n_inv_fidelity; });
    row("h_fidelity", [](const MetricsBlock& b) { return b.h_fidelity; });
    row("entropy_sparsity",
        [](const MetricsBlock& b) { return b.entropy_sparsity; });
  }
  std::cout << csv.str();
  return 0;
}

int cmd_oracle(const std::string& graph_path, const std::string& payoff_path,
               int node, const std::string& solver_name,
               std::optional<double> tau_opt) {
  Graph g = load_graph_file(graph_path, &std::cerr);
  const int n = g.node_count();
  const double tau = tau_opt.value_or(default_tau(n));

  LinearSolverFn solver;
  std::shared_ptr<HnSolver> hn;
  if (solver_name == "shapley") {
    solver = [](const Graph&, const CharacteristicFunction& v) {
      return shapley_exact(v).phi;
    };
  } else if (solver_name == "myerson") {
    solver = [](const Graph& gg, const CharacteristicFunction& v) {
      return myerson(gg, v).phi;
    };
  } else if (solver_name == "hn") {
    warn_tau(n, tau);
    hn = std::make_shared<HnSolver>(g, tau);
    solver = [hn](const Graph&, const CharacteristicFunction& v) {
      return hn->solve(v).phi;
    };
  } else {
    throw InvalidInputError("unknown solver \"" + solver_name +
                            "\"; expected shapley|hn|myerson");
  }

  auto weights = linear_weights(g, node, solver);
  if (!payoff_path.empty()) {
    // Optional cross-check input: weights applied to a payoff table must
    // reproduce the solver output.
    (void)load_payoff_file(payoff_path);
  }
  Json out;
  out["node"] = node;
  out["solver"] = solver_name;
  if (solver_name == "hn") out["tau"] = tau;
  Json raw = Json::object();
  for (const auto& [mask, w] : weights) raw[std::to_string(mask)] = w;
  out["weights"] = std::move(raw);
  Json marg = Json::object();
  for (const auto& [mask, w] : marginal_weights(weights, node))
    marg[std::to_string(mask)] = w;
  out["marginal_weights"] = std::move(marg);
  std::cout << dump_pretty(out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structure-aware cooperative-game attributions for graphs"};
  app.require_subcommand(1);

  std::string graph_path, payoff_path, model_path, f0_path;
  std::string method = "hn", methods_csv = "shapley,hn,myerson";
  std::string solver_name = "shapley";
  std::optional<double> tau, gamma;
  double gamma_required = 0.0;
  int max_sample = 10, node = 0, threads = 1;
  int exact_cap = kDefaultExactCap, matrix_cap = kDefaultMatrixCap;
  std::optional<int> samples;
  std::uint64_t seed = 0;
  bool with_metrics = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--graph", graph_path, "graph JSON file")->required();
    cmd->add_option("--tau", tau, "surplus share per neighbor");
    cmd->add_option("--seed", seed, "deterministic RNG seed (default 0)");
    cmd->add_option("--threads", threads,
                    "worker budget for table fill and squaring");
    cmd->add_option("--m", max_sample, "exact-solve / sample-size bound");
    cmd->add_option("--samples", samples, "Monte-Carlo sample count");
    cmd->add_option("--exact-cap", exact_cap, "payoff-table size cap");
    cmd->add_option("--matrix-cap", matrix_cap, "coalition-matrix size cap");
  };

  CLI::App* score = app.add_subcommand("score", "compute one attribution vector");
  add_common(score);
  score->add_option("--payoff", payoff_path, "payoff table JSON");
  score->add_option("--model", model_path, "model JSON");
  score->add_option("--f0", f0_path, "baseline dataset JSON");
  score->add_option("--method", method, "shapley|hn|hn-mc|myerson|cshapley")
      ->required();

  CLI::App* explain = app.add_subcommand("explain", "run the full pipeline");
  add_common(explain);
  explain->add_option("--model", model_path, "model JSON")->required();
  explain->add_option("--f0", f0_path, "baseline dataset JSON");
  explain->add_option("--gamma", gamma_required, "sparsity budget in (0,1)")
      ->required();
  explain->add_flag("--metrics", with_metrics, "attach fidelity metrics");

  CLI::App* compare = app.add_subcommand("compare", "side-by-side CSV");
  add_common(compare);
  compare->add_option("--payoff", payoff_path, "payoff table JSON");
  compare->add_option("--model", model_path, "model JSON");
  compare->add_option("--f0", f0_path, "baseline dataset JSON");
  compare->add_option("--methods", methods_csv, "comma-separated methods");
  compare->add_option("--gamma", gamma, "selection budget for metrics");
  compare->add_flag("--metrics", with_metrics, "append metric rows");

  CLI::App* oracle = app.add_subcommand("oracle", "dump linear weights");
  oracle->add_option("--graph", graph_path, "graph JSON file")->required();
  oracle->add_option("--payoff", payoff_path, "optional payoff table");
  oracle->add_option("--node", node, "node to decompose")->required();
  oracle->add_option("--solver", solver_name, "shapley|hn|myerson");
  oracle->add_option("--tau", tau, "surplus share (hn solver)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (score->parsed())
      return cmd_score(graph_path, payoff_path, model_path, f0_path, method,
                       tau, max_sample, samples, seed, threads, exact_cap,
                       matrix_cap);
    if (explain->parsed())
      return cmd_explain(graph_path, model_path, f0_path, gamma_required, tau,
                         max_sample, samples, seed, with_metrics, threads,
                         matrix_cap);
    if (compare->parsed())
      return cmd_compare(graph_path, payoff_path, model_path, f0_path,
                         methods_csv, tau, max_sample, samples, seed,
                         with_metrics, gamma, threads, exact_cap, matrix_cap);
    if (oracle->parsed())
      return cmd_oracle(graph_path, payoff_path, node, solver_name, tau);
  } catch (const NoConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
