#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fpinn {

// Dense feed-forward network u(t,x;theta): input (t,x), tanh hidden layers,
// linear scalar output. Parameters are a flat vector, per layer the weight
// matrix row-major (out x in) followed by the biases.
struct NetworkParams {
  std::vector<int> widths;  // first = 2, last = 1
  std::vector<double> params;
  std::uint64_t init_seed = 0;

  std::size_t layer_count() const { return widths.size() - 1; }
};

std::size_t param_count(const std::vector<int>& widths);

/// Glorot-uniform weights, zero biases, deterministic in the seed.
NetworkParams init_network(const std::vector<int>& widths, std::uint64_t seed);

/// Value and exact input derivatives of the network at one point.
struct PointJets {
  double u, u_t, u_x, u_xx;
};

/// Reverse-pass seeds: gradient of wu*u + wut*u_t + wux*u_x + wuxx*u_xx.
struct QuerySeeds {
  double wu = 0.0, wut = 0.0, wux = 0.0, wuxx = 0.0;
};

// Evaluator bound to a fixed architecture. Forward passes propagate jets
// (value + directional Taylor coefficients through second order in x), and
// the reverse pass accumulates parameter gradients over that forward jet
// computation. Scratch buffers are reused; one Workspace per thread.
class NetworkEval {
 public:
  explicit NetworkEval(const NetworkParams& net);

  struct Workspace {
    std::vector<double> buf;
  };

  double value(const double* params, double t, double x, Workspace& ws) const;
  void value_and_dt(const double* params, double t, double x, Workspace& ws, double& u,
                    double& u_t) const;
  PointJets jets(const double* params, double t, double x, Workspace& ws) const;

  // Forward + reverse with the given seeds; adds into grad (size n_params).
  // Slot shape is chosen from the seeds: wux/wuxx nonzero -> full jets,
  // wut nonzero -> (value, d/dt), else plain value.
  double seeded_gradient(const double* params, double t, double x, const QuerySeeds& seeds,
                         Workspace& ws, std::span<double> grad) const;

  std::size_t n_params() const { return n_params_; }
  const std::vector<int>& widths() const { return widths_; }
  std::size_t workspace_doubles() const;

 private:
  template <int K>
  double forward_impl(const double* params, const double* in_jets, double* tape,
                      double* out_jet) const;
  template <int K>
  void reverse_impl(const double* params, const double* in_jets, const double* tape,
                    const double* out_adjoint, double* grad) const;
  template <int K>
  double run_seeded(const double* params, double t, double x, const QuerySeeds& seeds,
                    Workspace& ws, std::span<double> grad) const;

  std::vector<int> widths_;
  std::vector<std::size_t> w_off_, b_off_;
  std::size_t n_params_ = 0;
  int max_width_ = 0;
  std::size_t tape_stride_ = 0;  // doubles per slot-4 tape
};

// --- checkpoint io: structured text header + hexfloat parameter array ---

struct Checkpoint {
  NetworkParams net;
  long iteration = 0;
};

void save_checkpoint(const std::string& path, const NetworkParams& net, long iteration);
Checkpoint load_checkpoint(const std::string& path);

// --- Adam ---

class AdamOptimizer {
 public:
  AdamOptimizer(std::size_t n, double lr, double beta1 = 0.9, double beta2 = 0.999,
                double eps = 1e-8);
  void step(std::span<double> params, std::span<const double> grad);
  double learning_rate() const { return lr_; }
  void set_learning_rate(double lr) { lr_ = lr; }

 private:
  double lr_, beta1_, beta2_, eps_;
  long t_ = 0;
  std::vector<double> m_, v_;
};

}  // namespace fpinn
