#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fpinn/config.hpp"
#include "fpinn/pinn.hpp"

namespace fpinn::cli {

struct GjTableOptions {
  double alpha = 1.5;
  int m = 16;
  int n = 2;
  std::string out;  // empty: stdout
};
int cmd_gj_table(const GjTableOptions& opt);

struct ValidateOptions {
  double alpha = 1.5;
  std::string scheme = "gj2";
  int m = 16;
  double t = 0.75;
  double lambda = -1.0;
  std::uint64_t seed = 1;
  std::string out;
};
int cmd_validate_derivative(const ValidateOptions& opt);

struct SweepOptions {
  std::string axis = "alpha";  // "m" or "alpha"
  double from = 1.01, to = 1.99;
  int points = 100;
  double t = 1.5;
  double lambda = -1.0;
  int m_mc = 10000, m_gj = 100;
  std::uint64_t seed = 1;
  std::string out = "sweep.csv";
};
int cmd_sweep(const SweepOptions& opt);

struct TrainOptions {
  std::string config_path;               // --config
  std::string preset;                    // --preset
  std::vector<std::string> overrides;    // --set section.key=value
  std::string out_dir = ".";
  bool serial = false;
  int threads = 0;
  int log_every = 0;
};
int cmd_train(const TrainOptions& opt);

struct EvaluateOptions {
  std::string checkpoint;
  std::string problem = "dw_eq19";
  double alpha = 0.0;  // 0: problem default
  double T = 0.0;
  int k_mode = 0;
  double lambda = 0.0;
  int grid = 201;
  std::string out = "grid.csv";
};
int cmd_evaluate(const EvaluateOptions& opt);

/// Resolve a train run's IniConfig from preset/config/overrides.
IniConfig resolve_train_config(const TrainOptions& opt);

/// Build the library-level objects from a resolved config.
ProblemSpec problem_from_config(const IniConfig& c);
TrainConfig train_config_from_config(const IniConfig& c);

}  // namespace fpinn::cli
