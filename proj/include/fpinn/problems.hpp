#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace fpinn {

enum class SpatialOperatorKind { LinearDiffusion, Burgers };

// One initial-boundary value problem instance on (0,T] x (x_lo,x_hi) with
// homogeneous Dirichlet boundaries, sine-mode initial data
//   u(0,x) = amp_a sin(k pi x), u_t(0,x) = amp_b sin(k pi x),
// and zero source. Linear cases carry the Mittag-Leffler series solution
//   u(t,x) = (amp_a E_{alpha,1}(-lambda t^alpha)
//             + amp_b t E_{alpha,2}(-lambda t^alpha)) sin(k pi x).
struct ProblemSpec {
  std::string name;
  double T = 1.0;
  double x_lo = 0.0, x_hi = 1.0;
  double alpha = 1.5;
  SpatialOperatorKind op = SpatialOperatorKind::LinearDiffusion;
  double diffusion_coef = 1.0;  // LinearDiffusion
  double viscosity = 0.0;       // Burgers
  int k_mode = 1;
  double lambda = 0.0;  // decay rate of the exact solution
  double amp_a = 1.0, amp_b = 0.0;
  bool has_exact = false;

  double initial_value(double x) const;
  double initial_velocity(double x) const;
  double source(double t, double x) const;

  /// Solution time profile g(t) and its derivative; exact_solution is
  /// g(t) sin(k pi x). Throws if no exact solution is available.
  double exact_time_profile(double t) const;
  double exact_time_profile_derivative(double t) const;
  double exact_solution(double t, double x) const;

  /// N(u, f) such that the residual is estimator + N: LinearDiffusion gives
  /// -coef*u_xx - f, Burgers gives u*u_x - visc*u_xx (zero-source forms).
  double spatial_apply(double u, double u_x, double u_xx, double f) const;

  void validate() const;
};

// Catalog: dw_eq19 (T=1, alpha=1.5, lambda=pi^2, amplitudes (2,-1)),
// dw_eq24 (T=2, coef lambda/(k pi)^2, amplitudes (1,-0.5)),
// burgers_eq26 (Omega=(-1,1), T=1, visc 0.01/pi, a=-sin(pi x), b=sin(pi x)).
ProblemSpec problem_by_name(const std::string& name,
                            std::optional<double> alpha = std::nullopt,
                            std::optional<double> T = std::nullopt,
                            std::optional<int> k_mode = std::nullopt,
                            std::optional<double> lambda = std::nullopt);

}  // namespace fpinn
