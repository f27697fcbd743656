#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "fpinn/csv.hpp"
#include "fpinn/parallel.hpp"
#include "fpinn/specfun.hpp"
#include "presets.hpp"

namespace fpinn::cli {

namespace fs = std::filesystem;

namespace {

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
  return buf;
}

/// Caputo derivative of exp(lambda t) of order alpha in (1,2).
double exp_caputo_reference(double alpha, double lambda, double t) {
  return lambda * lambda * std::pow(t, 2.0 - alpha) *
         mittag_leffler({1.0, 3.0 - alpha}, lambda * t);
}

class ExpField final : public TemporalField {
 public:
  explicit ExpField(double lambda) : lambda_(lambda) {}
  double value(double t) const override { return std::exp(lambda_ * t); }
  double first_derivative(double t) const override {
    return lambda_ * std::exp(lambda_ * t);
  }

 private:
  double lambda_;
};

}  // namespace

int cmd_gj_table(const GjTableOptions& opt) {
  if (opt.m > kRuleDegradationWarning)
    std::fprintf(stderr,
                 "warning: rule sizes above %d are known to lose accuracy to the "
                 "eigenproblem conditioning\n",
                 kRuleDegradationWarning);
  const auto rule = gauss_jacobi_rule(opt.m, opt.alpha, opt.n);
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!opt.out.empty()) {
    file.open(opt.out);
    if (!file) throw std::runtime_error("cannot open " + opt.out);
    os = &file;
  }
  (*os) << "index,node,weight\n";
  for (std::size_t i = 0; i < rule.size(); ++i)
    (*os) << i << ',' << format_full(rule.nodes[i]) << ',' << format_full(rule.weights[i])
          << '\n';
  return 0;
}

int cmd_validate_derivative(const ValidateOptions& opt) {
  EstimatorConfig cfg;
  cfg.alpha = opt.alpha;
  cfg.scheme = scheme_from_name(opt.scheme);
  cfg.m_points = opt.m;
  cfg.seed = opt.seed;

  const ExpField f(opt.lambda);
  const double estimate = caputo_estimate(cfg, f, opt.t);
  const double reference = exp_caputo_reference(opt.alpha, opt.lambda, opt.t);
  const double rel = std::abs(estimate - reference) / std::abs(reference);

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!opt.out.empty()) {
    file.open(opt.out);
    if (!file) throw std::runtime_error("cannot open " + opt.out);
    os = &file;
  }
  (*os) << "scheme,alpha,M,t,estimate,reference,rel_error\n";
  (*os) << opt.scheme << ',' << format_full(opt.alpha) << ',' << opt.m << ','
        << format_full(opt.t) << ',' << format_full(estimate) << ',' << format_full(reference)
        << ',' << format_full(rel) << '\n';
  return 0;
}

int cmd_sweep(const SweepOptions& opt) {
  CsvWriter csv(opt.out, {"scheme", "alpha", "M", "t", "estimate", "reference", "rel_error"});
  const Scheme schemes[] = {Scheme::MC_I, Scheme::MC_II, Scheme::GJ_I, Scheme::GJ_II};

  auto emit = [&](Scheme s, double alpha, int m) {
    EstimatorConfig cfg;
    cfg.alpha = alpha;
    cfg.scheme = s;
    cfg.m_points = m;
    cfg.seed = opt.seed;
    const ExpField f(opt.lambda);
    const double est = caputo_estimate(cfg, f, opt.t);
    const double ref = exp_caputo_reference(alpha, opt.lambda, opt.t);
    csv.row() << scheme_name(s) << alpha << m << opt.t << est << ref
              << std::abs(est - ref) / std::abs(ref);
  };

  if (opt.axis == "alpha") {
    for (int i = 0; i < opt.points; ++i) {
      const double alpha = opt.from + (opt.to - opt.from) * i / (opt.points - 1);
      for (Scheme s : schemes)
        emit(s, alpha, scheme_is_monte_carlo(s) ? opt.m_mc : opt.m_gj);
    }
  } else if (opt.axis == "m") {
    // doubling ladders, sized per family
    for (int k = 1; k <= 10; ++k)
      for (Scheme s : {Scheme::MC_I, Scheme::MC_II}) emit(s, opt.from, 10 * (1 << k));
    for (int k = 1; k <= 3; ++k)
      for (Scheme s : {Scheme::GJ_I, Scheme::GJ_II}) emit(s, opt.from, 10 * (1 << k));
  } else {
    throw std::invalid_argument("sweep axis must be 'alpha' or 'm'");
  }
  return 0;
}

IniConfig resolve_train_config(const TrainOptions& opt) {
  IniConfig cfg;
  if (!opt.preset.empty() && !opt.config_path.empty())
    throw std::invalid_argument("pass either --preset or --config, not both");
  if (!opt.preset.empty())
    cfg = preset_config(opt.preset);
  else if (!opt.config_path.empty())
    cfg = IniConfig::parse_file(opt.config_path);
  else
    throw std::invalid_argument("train needs --preset or --config");

  for (const auto& kv : opt.overrides) {
    const auto dot = kv.find('.');
    const auto eq = kv.find('=');
    if (dot == std::string::npos || eq == std::string::npos || dot > eq)
      throw std::invalid_argument("--set expects section.key=value, got: " + kv);
    cfg.set(kv.substr(0, dot), kv.substr(dot + 1, eq - dot - 1), kv.substr(eq + 1));
  }
  return cfg;
}

ProblemSpec problem_from_config(const IniConfig& c) {
  const std::string name = c.get_or("problem", "name", "dw_eq19");
  std::optional<double> alpha, T, lambda;
  std::optional<int> k;
  if (c.has("problem", "alpha")) alpha = c.get_double("problem", "alpha", 0);
  if (c.has("problem", "T")) T = c.get_double("problem", "T", 0);
  if (c.has("problem", "k_mode")) k = static_cast<int>(c.get_long("problem", "k_mode", 1));
  if (c.has("problem", "lambda")) lambda = c.get_double("problem", "lambda", 0);
  return problem_by_name(name, alpha, T, k, lambda);
}

TrainConfig train_config_from_config(const IniConfig& c) {
  TrainConfig t;
  t.hidden_layers = static_cast<int>(c.get_long("network", "hidden_layers", 7));
  t.hidden_width = static_cast<int>(c.get_long("network", "width", 20));
  t.iterations = static_cast<int>(c.get_long("training", "iterations", 10));
  t.epochs_per_iter = static_cast<int>(c.get_long("training", "epochs", 5000));
  t.lr = c.get_double("training", "lr", 1e-3);
  t.weight_bd = c.get_double("training", "weight_bd", 1.0);
  t.weight_init = c.get_double("training", "weight_init", 1.0);
  t.seed = static_cast<std::uint64_t>(c.get_long("training", "seed", 1));
  t.estimator.scheme = scheme_from_name(c.get_or("estimator", "scheme", "gj2"));
  t.estimator.m_points = static_cast<int>(c.get_long("estimator", "m", 16));
  t.estimator.epsilon_clip = c.get_double("estimator", "epsilon", -1.0);
  t.estimator.seed = static_cast<std::uint64_t>(c.get_long("estimator", "seed", 0));
  t.n_interior = static_cast<int>(c.get_long("sampling", "n_interior", 5000));
  t.n_boundary = static_cast<int>(c.get_long("sampling", "n_boundary", 1000));
  t.n_initial = static_cast<int>(c.get_long("sampling", "n_initial", 1000));
  const std::string resample = c.get_or("sampling", "resample", "uniform");
  if (resample == "rad")
    t.resample = ResamplePolicy::RAD;
  else if (resample == "uniform")
    t.resample = ResamplePolicy::UniformRefresh;
  else
    throw std::invalid_argument("sampling.resample must be uniform or rad");
  t.rad.replace_fraction = c.get_double("sampling", "rad_fraction", 0.3);
  t.rad.power_k = c.get_double("sampling", "rad_k", 1.0);
  t.rad.offset_c = c.get_double("sampling", "rad_c", 1.0);
  t.rad.pool_factor = static_cast<int>(c.get_long("sampling", "rad_pool_factor", 10));
  t.test_grid = static_cast<int>(c.get_long("training", "test_grid", 201));
  t.record_clouds = t.resample == ResamplePolicy::RAD;
  return t;
}

int cmd_train(const TrainOptions& opt) {
  if (opt.serial)
    set_thread_count(1);
  else if (opt.threads > 0)
    set_thread_count(opt.threads);

  IniConfig cfg = resolve_train_config(opt);
  const ProblemSpec problem = problem_from_config(cfg);
  TrainConfig tc = train_config_from_config(cfg);
  tc.log_every = opt.log_every;

  // output root: --out, overridable by the environment
  fs::path out_dir = opt.out_dir;
  if (const char* root = std::getenv("FPINN_OUTPUT_ROOT"); root && *root)
    out_dir = fs::path(root) / opt.out_dir;
  fs::create_directories(out_dir);

  const auto started = timestamp_utc();
  const auto report = train(problem, tc);

  std::vector<std::string> outputs;
  {
    const auto path = out_dir / "iterations.csv";
    CsvWriter csv(path.string(), {"iteration", "loss_in", "loss_bd", "loss_init", "e_r",
                                  "seconds"});
    for (const auto& it : report.iterations)
      csv.row() << it.iteration << it.loss_in << it.loss_bd << it.loss_init << it.e_r
                << it.seconds;
    outputs.push_back("iterations.csv");
  }
  {
    const auto path = out_dir / "checkpoint.txt";
    save_checkpoint(path.string(), report.params,
                    report.iterations.empty() ? 0 : report.iterations.back().iteration);
    outputs.push_back("checkpoint.txt");
  }
  for (std::size_t k = 0; k < report.clouds.size(); ++k) {
    char name[48];
    std::snprintf(name, sizeof(name), "cloud_iter%03zu.csv", k + 1);
    CsvWriter csv((out_dir / name).string(), {"iteration", "t", "x"});
    for (const auto& q : report.clouds[k])
      csv.row() << static_cast<int>(k + 1) << q.t << q.x;
    outputs.emplace_back(name);
  }

  // manifest written atomically at run end
  {
    nlohmann::json manifest;
    manifest["version"] = "fpinn 0.1.0";
    manifest["started_at"] = started;
    manifest["finished_at"] = timestamp_utc();
    manifest["config"] = cfg.serialize();
    manifest["seeds"] = {{"master", tc.seed}, {"estimator", tc.estimator.seed}};
    manifest["outputs"] = outputs;
    manifest["diverged"] = report.diverged;
    if (std::isfinite(report.final_e_r)) manifest["final_e_r"] = report.final_e_r;
    const auto tmp = out_dir / "manifest.json.tmp";
    std::ofstream mf(tmp);
    mf << manifest.dump(2) << '\n';
    mf.close();
    fs::rename(tmp, out_dir / "manifest.json");
  }

  if (report.diverged) {
    std::fprintf(stderr, "error: training diverged (module pinn, operation train)\n");
    return 2;
  }
  if (std::isfinite(report.final_e_r))
    std::printf("final e_r = %.6g\n", report.final_e_r);
  std::printf("outputs written to %s\n", out_dir.string().c_str());
  return 0;
}

int cmd_evaluate(const EvaluateOptions& opt) {
  const Checkpoint ck = load_checkpoint(opt.checkpoint);
  std::optional<double> alpha, T, lambda;
  std::optional<int> k;
  if (opt.alpha > 0) alpha = opt.alpha;
  if (opt.T > 0) T = opt.T;
  if (opt.k_mode > 0) k = opt.k_mode;
  if (opt.lambda != 0) lambda = opt.lambda;
  const ProblemSpec problem = problem_by_name(opt.problem, alpha, T, k, lambda);

  const NetworkEval ev(ck.net);
  NetworkEval::Workspace ws;
  CsvWriter csv(opt.out, {"t", "x", "u_pred", "u_exact", "abs_err"});
  const int n = opt.grid;
  for (int it = 0; it < n; ++it) {
    const double t = problem.T * it / (n - 1);
    const double g = problem.has_exact ? problem.exact_time_profile(t) : 0.0;
    for (int ix = 0; ix < n; ++ix) {
      const double x = problem.x_lo + (problem.x_hi - problem.x_lo) * ix / (n - 1);
      const double pred = ev.value(ck.net.params.data(), t, x, ws);
      if (problem.has_exact) {
        const double exact = g * std::sin(problem.k_mode * 3.14159265358979323846 * x);
        csv.row() << t << x << pred << exact << std::abs(pred - exact);
      } else {
        csv.row() << t << x << pred << "nan" << "nan";
      }
    }
  }
  return 0;
}

}  // namespace fpinn::cli
