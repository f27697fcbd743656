#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "fpinn/quadrature.hpp"

namespace fpinn {

// The four order-(1,2) schemes plus the order-(0,1) baselines. Type I keeps
// the first derivative inside the integral; Type II is the transformed form
// whose shifted queries need values only.
enum class Scheme { MC_I, GJ_I, MC_II, GJ_II, MC_Base, GJ_Base };

bool scheme_is_monte_carlo(Scheme s);
bool scheme_is_transformed(Scheme s);
int scheme_order_n(Scheme s);  // 2 for the diffusion-wave schemes, 1 for baselines
const char* scheme_name(Scheme s);
Scheme scheme_from_name(std::string_view name);

struct EstimatorConfig {
  double alpha = 1.5;
  Scheme scheme = Scheme::GJ_II;
  int m_points = 16;
  double epsilon_clip = -1.0;  // negative: use the per-scheme default
  std::uint64_t seed = 0;

  double epsilon() const;
  void validate() const;
  static double default_epsilon(Scheme s);
};

// A scalar function of time on [0,T] with an exact first derivative
// (autodiff or closed form, never finite differences).
class TemporalField {
 public:
  virtual ~TemporalField() = default;
  virtual double value(double t) const = 0;
  virtual double first_derivative(double t) const = 0;

  // f(t_hi) - f(t_lo). The transformed schemes divide this by squared lags,
  // so at small lags the default (difference of two rounded values) costs
  // ~eps*|f|/h^2; fields with a closed form should override with a
  // relative-accuracy evaluation (expm1-style).
  virtual double value_increment(double t_hi, double t_lo) const {
    return value(t_hi) - value(t_lo);
  }

  virtual void value_batch(std::span<const double> t, std::span<double> out) const;
  virtual void first_derivative_batch(std::span<const double> t, std::span<double> out) const;
  virtual void value_increment_batch(double t_hi, std::span<const double> t_lo,
                                     std::span<double> out) const;
};

/// Decorator counting value/derivative queries; test instrumentation for the
/// shifted-evaluation accounting. An increment counts as one value query.
class CountingField final : public TemporalField {
 public:
  explicit CountingField(const TemporalField& inner) : inner_(inner) {}
  double value(double t) const override {
    ++value_calls;
    return inner_.value(t);
  }
  double first_derivative(double t) const override {
    ++derivative_calls;
    return inner_.first_derivative(t);
  }
  double value_increment(double t_hi, double t_lo) const override {
    ++value_calls;
    return inner_.value_increment(t_hi, t_lo);
  }
  mutable long value_calls = 0;
  mutable long derivative_calls = 0;

 private:
  const TemporalField& inner_;
};

// Shifted-node data for one query time: shifted times s_j = t - t*tau_j,
// lags h_j = t - s_j re-derived from the rounded s_j (so that difference
// quotients cancel exactly on identity-like fields), clipped denominators
// d_j = max(h_j, eps) for MC schemes, and weights with the Monte Carlo
// Beta normalization folded in.
struct ShiftedNodes {
  std::vector<double> s, h, d, w;
};

ShiftedNodes make_shifted_nodes(const EstimatorConfig& cfg, const QuadratureRule& rule, double t);

/// Builds the scheme's quadrature rule (Gauss-Jacobi, or a seeded Beta draw
/// keyed by (cfg.seed, stream) for the Monte Carlo schemes).
QuadratureRule make_rule(const EstimatorConfig& cfg, std::uint64_t stream = 0);

// Exact linearization of the estimator in its network queries:
//   est = c_ut_t f'(t) + c_ut_0 f'(0) + c_u_t f(t) + c_u_0 f(0) + sum_j c_shift[j] q_j
// with q_j = f(s_j) (transformed/baseline) or f'(s_j) (direct). This is the
// single source of truth the PINN gradient seeds are built from.
struct EstimatorCoeffs {
  double c_ut_t = 0.0, c_ut_0 = 0.0, c_u_t = 0.0, c_u_0 = 0.0;
  std::vector<double> c_shift;
  bool shifted_uses_derivative = false;
};

EstimatorCoeffs caputo_coefficients(const EstimatorConfig& cfg, const ShiftedNodes& nodes, double t);

// Difference-form evaluation of the same estimator (vanishes exactly on
// f(t) = t). du0 is the increment f(t) - f(0); for the transformed/baseline
// schemes shifted_q[j] holds the increment f(t) - f(s_j), for the direct
// schemes it holds f'(s_j).
double caputo_assemble(const EstimatorConfig& cfg, const ShiftedNodes& nodes, double t,
                       double du0, double ut_t, double ut_0,
                       std::span<const double> shifted_q);

/// Single-point estimate; MC node stream is (cfg.seed, stream 0).
double caputo_estimate(const EstimatorConfig& cfg, const TemporalField& f, double t);

/// Batched estimate; shifted evaluations are flattened into one query batch
/// of size N*M, and MC node streams are keyed by (cfg.seed, query index).
std::vector<double> caputo_estimate_batch(const EstimatorConfig& cfg, const TemporalField& f,
                                          std::span<const double> times);

// Independent reference for alpha in (1,2): the transformed-form integral on
// dyadic panels graded toward tau = 0 with Gauss-Legendre on each, the last
// dyadic sliver handled by a short Taylor tail with stencil-derived
// derivatives of f'. Error estimated against a 24-point rerun; throws
// AccuracyError (carrying the best estimate) when the estimate exceeds tol.
double caputo_reference(double alpha, const TemporalField& f, double t, double tol = 1e-9);

}  // namespace fpinn
