// Command-line surface: synthetic data generation, structure fitting,
// graph evaluation, experiment sweeps, and the closed-form oracles.
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "entdag/io.hpp"
#include "entdag/metrics.hpp"
#include "entdag/nonlinear.hpp"
#include "entdag/rng.hpp"
#include "entdag/scm.hpp"
#include "entdag/solver.hpp"
#include "entdag/theory.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using namespace entdag;

// Flag problems detected after CLI11 parsing; exits with the usage code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

AcyclicityKernel kernel_from_string(const std::string& s) {
  if (s == "expm") return AcyclicityKernel::expm;
  if (s == "polynomial") return AcyclicityKernel::polynomial;
  throw UsageError("unknown acyclicity kernel: " + s);
}

int to_int(double value, const std::string& what) {
  const int n = static_cast<int>(std::llround(value));
  if (std::abs(value - n) > 1e-9)
    throw UsageError(what + " must be an integer, got " + std::to_string(value));
  return n;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
  std::string kind = "linear";
  int d = 15;
  int m = 600;
  int in_degree = 2;
  std::string noise = "uniform";
  std::uint64_t seed = 123;
  double noise_variance = 0.0;  // 0 = draw scales U(0.5, 1.0)
  double alpha = 0.5;
  double sigma_nx = 2.0;
  double sigma_ny = 1.0;
  std::string out = ".";
};

int run_gen(const GenArgs& a) {
  const NoiseFamily family = noise_family_from_string(a.noise);
  if (a.m < 2) throw UsageError("--m must be at least 2");
  if (a.noise_variance < 0.0) throw UsageError("--noise-variance must be positive");

  Dataset data(Matrix::Zero(2, 1), {"x0"});
  Dag truth;
  json spec_json;
  if (a.kind == "bivariate") {
    if (!(a.sigma_nx > 0.0) || !(a.sigma_ny > 0.0))
      throw UsageError("--sigma-nx and --sigma-ny must be positive");
    BivariateSpec bs;
    bs.alpha = a.alpha;
    bs.sigma_nx = a.sigma_nx;
    bs.sigma_ny = a.sigma_ny;
    bs.noise_family = family;
    bs.m = a.m;
    bs.seed = a.seed;
    data = generate_bivariate(bs);
    truth = bivariate_truth();
    spec_json = json{{"kind", "bivariate"}, {"alpha", bs.alpha},
                     {"sigma_nx", bs.sigma_nx}, {"sigma_ny", bs.sigma_ny},
                     {"noise", a.noise}, {"m", bs.m}, {"seed", bs.seed}};
  } else if (a.kind == "linear" || a.kind == "nonlinear") {
    std::optional<double> fixed_sigma;
    if (a.noise_variance > 0.0) fixed_sigma = std::sqrt(a.noise_variance);
    truth = random_dag(a.d, a.in_degree, a.seed);
    const ScmSpec spec = make_scm_spec(truth, scm_kind_from_string(a.kind),
                                       family, a.seed, fixed_sigma);
    data = generate(spec, a.m).data;
    spec_json = json{{"kind", a.kind},       {"d", a.d},
                     {"m", a.m},             {"in_degree", a.in_degree},
                     {"noise", a.noise},     {"seed", a.seed},
                     {"edges", truth.edge_count()}};
    if (fixed_sigma) spec_json["noise_variance"] = a.noise_variance;
  } else {
    throw UsageError("unknown kind: " + a.kind);
  }

  const fs::path dir(a.out);
  fs::create_directories(dir);
  write_dataset_csv(data, (dir / "dataset.csv").string());
  write_digraph_json(truth.graph(), (dir / "truth.json").string());
  write_text(dir / "spec.json", spec_json.dump(2));
  std::cout << json{{"dataset", (dir / "dataset.csv").string()},
                    {"rows", data.m()},
                    {"cols", data.d()},
                    {"true_edges", truth.edge_count()}}
                   .dump(2)
            << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// fit

struct FitArgs {
  std::string data_path;
  std::string out = ".";
  std::string loss = "entropy";
  std::string model = "linear";
  double lambda1 = 0.1;
  double lambda2 = 0.01;
  double omega = 0.3;
  std::uint64_t seed = 123;
  bool standardize_columns = false;
  std::string entropy_mode = "standardized";
  int hidden_width = 10;
  std::string kernel = "expm";
  bool repair_cycles = false;
};

SolverConfig config_from(const FitArgs& a) {
  SolverConfig cfg;
  cfg.lambda1 = a.lambda1;
  cfg.lambda2 = a.lambda2;
  cfg.omega = a.omega;
  cfg.seed = a.seed;
  cfg.standardize_columns = a.standardize_columns;
  cfg.entropy_mode = entropy_mode_from_string(a.entropy_mode);
  cfg.kernel = kernel_from_string(a.kernel);
  return cfg;
}

int run_fit(const FitArgs& a) {
  if (a.model != "linear" && a.model != "mlp")
    throw UsageError("unknown model: " + a.model);
  const LossKind loss = loss_kind_from_string(a.loss);
  const SolverConfig cfg = config_from(a);

  const Dataset data = read_dataset_csv(a.data_path);
  SolveReport report = a.model == "linear"
                           ? solve(data, loss, cfg)
                           : mlp_solve(data, loss, cfg, a.hidden_width);

  // Optionally repair residual cycles in the thresholded graph by dropping
  // the weakest edge on each cycle; the drops are reported alongside.
  Digraph final_graph = report.est_graph;
  std::vector<std::pair<int, int>> dropped;
  if (a.repair_cycles && !is_acyclic(final_graph.adjacency)) {
    auto repaired = drop_cycle_edges(final_graph, report.w_est);
    final_graph = std::move(repaired.first);
    dropped = std::move(repaired.second);
  }

  const fs::path dir(a.out);
  fs::create_directories(dir);
  write_weights_csv(report.w_est, (dir / "west.csv").string());
  write_digraph_json(final_graph, (dir / "graph.json").string());

  json rep = json::parse(report_to_json(report));
  rep["loss"] = a.loss;
  rep["model"] = a.model;
  json drops = json::array();
  for (const auto& [from, to] : dropped) drops.push_back(json::array({from, to}));
  rep["dropped_edges"] = std::move(drops);
  rep["emitted_edges"] = final_graph.edge_count();
  write_text(dir / "report.json", rep.dump(2));

  std::cout << json{{"edges", final_graph.edge_count()},
                    {"dropped_edges", dropped.size()},
                    {"converged", report.converged},
                    {"outer_iterations", report.trace.size()},
                    {"wall_time", report.wall_time}}
                   .dump(2)
            << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// eval

int run_eval(const std::string& est_path, const std::string& truth_path) {
  const Digraph est = read_digraph_json(est_path);
  const Dag truth = read_dag_json(truth_path);
  if (est.d() != truth.d())
    throw std::runtime_error("graphs disagree on d: " + std::to_string(est.d()) +
                             " vs " + std::to_string(truth.d()));
  std::cout << metrics_to_json(evaluate_graph(est, truth)) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// theory

struct TheoryArgs {
  double alpha = 0.5;
  double sigma_nx = 2.0;
  double sigma_ny = 1.0;
  bool consistency = false;
  std::string noise = "gaussian";
  int d = 3;
  int m = 100000;
  std::uint64_t seed = 123;
};

int run_theory(const TheoryArgs& a) {
  if (!(a.sigma_nx > 0.0) || !(a.sigma_ny > 0.0))
    throw UsageError("--sigma-nx and --sigma-ny must be positive");
  BivariatePopulation p;
  p.alpha = a.alpha;
  p.var_nx = a.sigma_nx * a.sigma_nx;
  p.var_ny = a.sigma_ny * a.sigma_ny;

  const PopulationRegression r = population_regression(p);
  const PopulationLsLosses ls = population_ls_losses(p);
  json out{{"alpha", a.alpha},
           {"sigma_nx", a.sigma_nx},
           {"sigma_ny", a.sigma_ny},
           {"regression",
            json{{"beta_y_given_x", r.beta_y_given_x},
                 {"beta_x_given_y", r.beta_x_given_y},
                 {"var_y_marginal", r.var_y_marginal},
                 {"var_x_given_y", r.var_x_given_y},
                 {"var_y_given_x", r.var_y_given_x},
                 {"var_x_marginal", r.var_x_marginal}}},
           {"ls_causal", ls.causal},
           {"ls_anticausal", ls.anticausal},
           {"failure", ls_failure_predicted(p)}};

  if (a.consistency) {
    const Dag dag = random_dag(a.d, 2, a.seed);
    const ScmSpec spec = make_scm_spec(
        dag, ScmKind::linear, noise_family_from_string(a.noise), a.seed);
    const ConsistencyCheck check = check_entropy_likelihood_consistency(spec, a.m);
    out["consistency"] = json{
        {"noise", a.noise},
        {"d", a.d},
        {"m", a.m},
        {"entropy_score", check.entropy_score},
        {"neg_avg_loglik", check.neg_avg_loglik},
        {"estimator_score", check.estimator_score},
        {"gap", std::abs(check.entropy_score - check.neg_avg_loglik)}};
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
  std::string axis = "samples";
  std::vector<double> values;
  std::vector<std::string> methods = {"ls", "entropy"};
  std::string kind = "linear";
  int d = 15;
  int m = 600;
  int in_degree = 2;
  std::string noise = "uniform";
  double lambda1 = 0.1;
  double omega = 0.3;
  int trials = 10;
  std::uint64_t seed = 123;
  int jobs = 1;
  std::string out = ".";
  double noise_variance = 0.0;
  double alpha = 0.5;
  double sigma_nx = 2.0;
  double sigma_ny = 1.0;
  int hidden_width = 10;
  bool standardize_columns = false;
  std::string entropy_mode = "standardized";
  std::string kernel = "expm";
};

struct BenchRow {
  double axis_value = 0.0;
  int trial = 0;
  std::string method;
  GraphMetrics metrics;
  double seconds = 0.0;
  bool ok = false;
  std::string status = "ok";
};

std::pair<std::string, LossKind> split_method(const std::string& method) {
  if (method == "ls") return {"linear", LossKind::least_square};
  if (method == "entropy") return {"linear", LossKind::entropy};
  if (method == "mlp-ls") return {"mlp", LossKind::least_square};
  if (method == "mlp-entropy") return {"mlp", LossKind::entropy};
  throw UsageError("unknown method: " + method +
                   " (expected ls, entropy, mlp-ls, or mlp-entropy)");
}

// One generated instance scored by every requested method.
void run_bench_task(const BenchArgs& a, int axis_index, int trial,
                    std::vector<BenchRow>& rows_out) {
  const double value = a.values[static_cast<std::size_t>(axis_index)];
  const std::uint64_t trial_seed = derive_seed(
      a.seed, static_cast<std::uint64_t>(axis_index) * 1000003ULL +
                  static_cast<std::uint64_t>(trial));

  // Resolve the swept parameter into a concrete instance.
  int d = a.d;
  int m = a.m;
  double noise_variance = a.noise_variance;
  double alpha = a.alpha;
  double sigma_nx = a.sigma_nx;
  double sigma_ny = a.sigma_ny;
  std::string kind = a.kind;
  if (a.axis == "samples") m = to_int(value, "samples value");
  else if (a.axis == "variables") d = to_int(value, "variables value");
  else if (a.axis == "noise_variance") noise_variance = value;
  else if (a.axis == "alpha") { alpha = value; kind = "bivariate"; }
  else if (a.axis == "sigma_nx") { sigma_nx = value; kind = "bivariate"; }
  else if (a.axis == "sigma_ny") { sigma_ny = value; kind = "bivariate"; }

  const NoiseFamily family = noise_family_from_string(a.noise);
  Dataset data(Matrix::Zero(2, 1), {"x0"});
  Dag truth;
  std::string gen_error;
  try {
    if (kind == "bivariate") {
      BivariateSpec bs;
      bs.alpha = alpha;
      bs.sigma_nx = sigma_nx;
      bs.sigma_ny = sigma_ny;
      bs.noise_family = family;
      bs.m = m;
      bs.seed = trial_seed;
      data = generate_bivariate(bs);
      truth = bivariate_truth();
    } else {
      std::optional<double> fixed_sigma;
      if (noise_variance > 0.0) fixed_sigma = std::sqrt(noise_variance);
      truth = random_dag(d, a.in_degree, trial_seed);
      const ScmSpec spec = make_scm_spec(truth, scm_kind_from_string(kind),
                                         family, trial_seed, fixed_sigma);
      data = generate(spec, m).data;
    }
  } catch (const std::exception& e) {
    gen_error = e.what();
  }

  for (std::size_t mi = 0; mi < a.methods.size(); ++mi) {
    BenchRow& row = rows_out[mi];
    row.axis_value = value;
    row.trial = trial;
    row.method = a.methods[mi];
    if (!gen_error.empty()) {
      row.status = "generation failed: " + gen_error;
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const auto [model, loss] = split_method(a.methods[mi]);
      SolverConfig cfg;
      cfg.lambda1 = a.lambda1;
      cfg.omega = a.omega;
      cfg.seed = trial_seed;
      cfg.standardize_columns = a.standardize_columns;
      cfg.entropy_mode = entropy_mode_from_string(a.entropy_mode);
      cfg.kernel = kernel_from_string(a.kernel);
      const SolveReport report = model == "linear"
                                     ? solve(data, loss, cfg)
                                     : mlp_solve(data, loss, cfg, a.hidden_width);
      row.metrics = evaluate_graph(report.est_graph, truth);
      row.ok = true;
    } catch (const std::exception& e) {
      row.status = e.what();
    }
    row.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  }
}

std::string csv_safe(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

int run_bench(const BenchArgs& a) {
  if (a.trials < 1) throw UsageError("--trials must be at least 1");
  if (a.jobs < 1) throw UsageError("--jobs must be at least 1");
  if (a.methods.empty()) throw UsageError("--methods must not be empty");
  for (const std::string& mth : a.methods) split_method(mth);  // validate early
  if (a.kind != "linear" && a.kind != "nonlinear" && a.kind != "bivariate")
    throw UsageError("unknown kind: " + a.kind);
  if (a.axis == "variables" && a.kind == "bivariate")
    throw UsageError("the variables axis cannot sweep a bivariate instance");

  BenchArgs args = a;  // resolved copy (default axis values filled in)
  if (args.values.empty()) {
    if (args.axis == "samples") args.values = {200, 400, 600, 800, 1000};
    else if (args.axis == "variables") args.values = {5, 10, 15, 20, 25};
    else if (args.axis == "alpha") args.values = {0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    else
      throw UsageError("--values is required for axis " + args.axis);
  }
  if (args.axis != "samples" && args.axis != "variables" &&
      args.axis != "noise_variance" && args.axis != "alpha" &&
      args.axis != "sigma_nx" && args.axis != "sigma_ny")
    throw UsageError("unknown axis: " + args.axis);

  // Task list: one instance per (axis value, trial); every method scores it.
  const int n_values = static_cast<int>(args.values.size());
  const int n_methods = static_cast<int>(args.methods.size());
  const int n_tasks = n_values * args.trials;
  std::vector<std::vector<BenchRow>> task_rows(
      static_cast<std::size_t>(n_tasks),
      std::vector<BenchRow>(static_cast<std::size_t>(n_methods)));

  std::atomic<int> next_task{0};
  const auto worker = [&]() {
    while (true) {
      const int task = next_task.fetch_add(1);
      if (task >= n_tasks) return;
      run_bench_task(args, task / args.trials, task % args.trials,
                     task_rows[static_cast<std::size_t>(task)]);
    }
  };
  if (args.jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const int n_threads = std::min(args.jobs, n_tasks);
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  const fs::path dir(args.out);
  fs::create_directories(dir);

  // results.csv in deterministic (axis, trial, method) order.
  std::ostringstream csv;
  csv << "axis,trial,method,shd,fdr,tpr,seconds,status\n";
  for (const auto& rows : task_rows) {
    for (const BenchRow& row : rows) {
      csv << row.axis_value << ',' << row.trial << ',' << row.method << ',';
      if (row.ok)
        csv << row.metrics.shd << ',' << row.metrics.fdr << ','
            << row.metrics.tpr << ',';
      else
        csv << "nan,nan,nan,";
      csv << row.seconds << ',' << csv_safe(row.status) << '\n';
    }
  }
  write_text(dir / "results.csv", csv.str());

  // summary.json: mean and stddev per (axis value, method) cell.
  json cells = json::array();
  for (int vi = 0; vi < n_values; ++vi) {
    for (int mi = 0; mi < n_methods; ++mi) {
      std::vector<double> shd, fdr, tpr, secs;
      int exact = 0;
      for (int trial = 0; trial < args.trials; ++trial) {
        const BenchRow& row =
            task_rows[static_cast<std::size_t>(vi * args.trials + trial)]
                     [static_cast<std::size_t>(mi)];
        secs.push_back(row.seconds);
        if (!row.ok) continue;
        shd.push_back(row.metrics.shd);
        fdr.push_back(row.metrics.fdr);
        tpr.push_back(row.metrics.tpr);
        if (row.metrics.shd == 0) ++exact;
      }
      const auto mean = [](const std::vector<double>& v) {
        if (v.empty()) return std::nan("");
        double s = 0.0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
      };
      const auto stddev = [&](const std::vector<double>& v) {
        if (v.size() < 2) return 0.0;
        const double mu = mean(v);
        double s = 0.0;
        for (double x : v) s += (x - mu) * (x - mu);
        return std::sqrt(s / static_cast<double>(v.size() - 1));
      };
      cells.push_back(json{{"value", args.values[static_cast<std::size_t>(vi)]},
                           {"method", args.methods[static_cast<std::size_t>(mi)]},
                           {"trials", args.trials},
                           {"ok", static_cast<int>(shd.size())},
                           {"mean_shd", mean(shd)},
                           {"std_shd", stddev(shd)},
                           {"mean_fdr", mean(fdr)},
                           {"std_fdr", stddev(fdr)},
                           {"mean_tpr", mean(tpr)},
                           {"std_tpr", stddev(tpr)},
                           {"accuracy",
                            args.trials > 0
                                ? static_cast<double>(exact) / args.trials
                                : 0.0},
                           {"mean_seconds", mean(secs)}});
    }
  }
  const json summary{{"axis", args.axis}, {"cells", std::move(cells)}};
  write_text(dir / "summary.json", summary.dump(2));
  std::cout << summary.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Causal structure learning via continuous DAG optimization"};
  app.require_subcommand(1);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic dataset");
  gen->add_option("--kind", gen_args.kind, "linear | nonlinear | bivariate")
      ->capture_default_str();
  gen->add_option("--d", gen_args.d, "number of variables")->capture_default_str();
  gen->add_option("--m", gen_args.m, "number of samples")->capture_default_str();
  gen->add_option("--in-degree", gen_args.in_degree, "expected in-degree")
      ->capture_default_str();
  gen->add_option("--noise", gen_args.noise, "uniform | gumbel | gaussian")
      ->capture_default_str();
  gen->add_option("--seed", gen_args.seed, "generation seed")
      ->envname("ENTDAG_SEED")
      ->capture_default_str();
  gen->add_option("--noise-variance", gen_args.noise_variance,
                  "fix every noise variance (default: scales drawn U(0.5,1))");
  gen->add_option("--alpha", gen_args.alpha, "bivariate causal strength")
      ->capture_default_str();
  gen->add_option("--sigma-nx", gen_args.sigma_nx, "bivariate noise sd of X")
      ->capture_default_str();
  gen->add_option("--sigma-ny", gen_args.sigma_ny, "bivariate noise sd of Y")
      ->capture_default_str();
  gen->add_option("--out", gen_args.out, "output directory")->capture_default_str();

  FitArgs fit_args;
  CLI::App* fit = app.add_subcommand("fit", "Fit a DAG to a dataset");
  fit->add_option("--data", fit_args.data_path, "dataset CSV path")->required();
  fit->add_option("--out", fit_args.out, "output directory")->capture_default_str();
  fit->add_option("--loss", fit_args.loss, "ls | entropy")->capture_default_str();
  fit->add_option("--model", fit_args.model, "linear | mlp")->capture_default_str();
  fit->add_option("--lambda1", fit_args.lambda1, "l1 strength")->capture_default_str();
  fit->add_option("--lambda2", fit_args.lambda2, "mlp weight ridge")
      ->capture_default_str();
  fit->add_option("--omega", fit_args.omega, "edge threshold")->capture_default_str();
  fit->add_option("--seed", fit_args.seed, "solver seed")
      ->envname("ENTDAG_SEED")
      ->capture_default_str();
  fit->add_flag("--standardize-columns", fit_args.standardize_columns,
                "rescale every column to unit variance first");
  fit->add_option("--entropy-mode", fit_args.entropy_mode, "standardized | raw")
      ->capture_default_str();
  fit->add_option("--hidden-width", fit_args.hidden_width, "MLP hidden width")
      ->capture_default_str();
  fit->add_option("--kernel", fit_args.kernel, "expm | polynomial")
      ->capture_default_str();
  fit->add_flag("--repair-cycles", fit_args.repair_cycles,
                "drop weakest edges until the thresholded graph is acyclic");

  std::string est_path, truth_path;
  CLI::App* eval = app.add_subcommand("eval", "Score a graph against the truth");
  eval->add_option("--est", est_path, "estimated graph JSON")->required();
  eval->add_option("--truth", truth_path, "ground-truth DAG JSON")->required();

  TheoryArgs theory_args;
  CLI::App* theory = app.add_subcommand("theory", "Closed-form oracle verdicts");
  theory->add_option("--alpha", theory_args.alpha, "causal strength")
      ->capture_default_str();
  theory->add_option("--sigma-nx", theory_args.sigma_nx, "noise sd of X")
      ->capture_default_str();
  theory->add_option("--sigma-ny", theory_args.sigma_ny, "noise sd of Y")
      ->capture_default_str();
  theory->add_flag("--consistency", theory_args.consistency,
                   "also run the entropy/log-likelihood consistency check");
  theory->add_option("--noise", theory_args.noise,
                     "consistency noise family: uniform | gumbel | gaussian")
      ->capture_default_str();
  theory->add_option("--d", theory_args.d, "consistency SCM size")
      ->capture_default_str();
  theory->add_option("--m", theory_args.m, "consistency sample count")
      ->capture_default_str();
  theory->add_option("--seed", theory_args.seed, "consistency seed")
      ->envname("ENTDAG_SEED")
      ->capture_default_str();

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "Sweep one axis across trials");
  bench->add_option("--axis", bench_args.axis,
                    "samples | variables | noise_variance | alpha | sigma_nx | sigma_ny")
      ->capture_default_str();
  bench->add_option("--values", bench_args.values,
                    "axis values (comma-separated; built-in defaults when omitted)")
      ->delimiter(',');
  bench->add_option("--methods", bench_args.methods,
                    "ls | entropy | mlp-ls | mlp-entropy (comma-separated)")
      ->delimiter(',');
  bench->add_option("--kind", bench_args.kind, "linear | nonlinear | bivariate")
      ->capture_default_str();
  bench->add_option("--d", bench_args.d, "number of variables")
      ->capture_default_str();
  bench->add_option("--m", bench_args.m, "number of samples")->capture_default_str();
  bench->add_option("--in-degree", bench_args.in_degree, "expected in-degree")
      ->capture_default_str();
  bench->add_option("--noise", bench_args.noise, "uniform | gumbel | gaussian")
      ->capture_default_str();
  bench->add_option("--lambda1", bench_args.lambda1, "l1 strength")
      ->capture_default_str();
  bench->add_option("--omega", bench_args.omega, "edge threshold")
      ->capture_default_str();
  bench->add_option("--trials", bench_args.trials, "trials per axis value")
      ->capture_default_str();
  bench->add_option("--seed", bench_args.seed, "base seed")
      ->envname("ENTDAG_SEED")
      ->capture_default_str();
  bench->add_option("--jobs", bench_args.jobs, "parallel workers")
      ->capture_default_str();
  bench->add_option("--out", bench_args.out, "output directory")
      ->capture_default_str();
  bench->add_option("--noise-variance", bench_args.noise_variance,
                    "fix every noise variance");
  bench->add_option("--alpha", bench_args.alpha, "bivariate causal strength")
      ->capture_default_str();
  bench->add_option("--sigma-nx", bench_args.sigma_nx, "bivariate noise sd of X")
      ->capture_default_str();
  bench->add_option("--sigma-ny", bench_args.sigma_ny, "bivariate noise sd of Y")
      ->capture_default_str();
  bench->add_option("--hidden-width", bench_args.hidden_width, "MLP hidden width")
      ->capture_default_str();
  bench->add_flag("--standardize-columns", bench_args.standardize_columns,
                  "rescale every column to unit variance first");
  bench->add_option("--entropy-mode", bench_args.entropy_mode,
                    "standardized | raw")
      ->capture_default_str();
  bench->add_option("--kernel", bench_args.kernel, "expm | polynomial")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) return run_gen(gen_args);
    if (fit->parsed()) return run_fit(fit_args);
    if (eval->parsed()) return run_eval(est_path, truth_path);
    if (theory->parsed()) return run_theory(theory_args);
    if (bench->parsed()) return run_bench(bench_args);
  } catch (const UsageError& e) {
    std::cout << json{{"error", e.what()}}.dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cout << json{{"error", e.what()}}.dump() << '\n';
    return 2;
  }
  return 1;
}
