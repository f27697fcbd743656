#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "fpinn/field.hpp"
#include "fpinn/fracderiv.hpp"
#include "fpinn/network.hpp"
#include "fpinn/problems.hpp"
#include "fpinn/sampling.hpp"

namespace fpinn {

struct LossBreakdown {
  double total = 0.0, interior = 0.0, boundary = 0.0, initial = 0.0;
  bool finite = true;
};

/// Shifted-evaluation counters for one loss/residual evaluation.
struct QueryStats {
  long shifted_value = 0;
  long shifted_derivative = 0;
};

// Assembles PDE residuals and the composite loss for one (problem,
// estimator) pair. Monte Carlo node streams are keyed by
// (estimator seed, iteration, point index), so epochs within an iteration
// share nodes and reruns are reproducible regardless of partitioning.
class PinnAssembler {
 public:
  PinnAssembler(const ProblemSpec& problem, const EstimatorConfig& estimator);

  /// r_i = caputo_estimate(u(., x_i))(t_i) + N(u, f)(t_i, x_i), batched over
  /// the field interface (works for networks and analytic solutions alike).
  std::vector<double> pde_residual(const SpaceTimeField& f, std::span<const Pt> pts,
                                   int iteration = 0, std::uint64_t stream_salt = 0,
                                   QueryStats* stats = nullptr) const;

  // Composite loss; when grad is nonempty (size n_params) the full gradient
  // is accumulated over fixed-size point chunks reduced in chunk order, so
  // results are bit-identical for any worker count.
  LossBreakdown loss(const NetworkParams& net, const CollocationSet& colloc, double weight_bd,
                     double weight_init, int iteration, std::span<double> grad,
                     QueryStats* stats = nullptr) const;

  const EstimatorConfig& estimator() const { return cfg_; }

 private:
  ShiftedNodes nodes_for(double t, int iteration, std::uint64_t stream_salt,
                         std::size_t index) const;

  const ProblemSpec& problem_;
  EstimatorConfig cfg_;
  QuadratureRule gj_rule_;  // empty for MC schemes
};

enum class ResamplePolicy { UniformRefresh, RAD };

struct TrainConfig {
  int hidden_layers = 7;
  int hidden_width = 20;
  int iterations = 10;  // L
  int epochs_per_iter = 5000;
  double lr = 1e-3;
  double weight_bd = 1.0;
  double weight_init = 1.0;
  EstimatorConfig estimator;
  int n_interior = 5000;
  int n_boundary = 1000;
  int n_initial = 1000;
  ResamplePolicy resample = ResamplePolicy::UniformRefresh;
  RadConfig rad;
  std::uint64_t seed = 0;
  int test_grid = 201;
  bool record_clouds = false;
  int log_every = 0;  // print a stderr progress line every N epochs (0 = off)
};

struct IterationRecord {
  int iteration = 0;
  double loss_in = 0.0, loss_bd = 0.0, loss_init = 0.0;
  double e_r = std::numeric_limits<double>::quiet_NaN();
  double seconds = 0.0;
};

struct TrainReport {
  std::vector<IterationRecord> iterations;
  NetworkParams params;
  bool diverged = false;
  double final_e_r = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::vector<Pt>> clouds;  // per-iteration interior snapshots
};

/// L iterations of full-batch Adam with per-iteration resampling.
TrainReport train(const ProblemSpec& problem, const TrainConfig& cfg);

/// L2 relative error of the network against the exact solution on an
/// n x n grid over [0,T] x [x_lo,x_hi].
double test_grid_error(const ProblemSpec& problem, const NetworkParams& net, int n);

}  // namespace fpinn
