#include "fpinn/problems.hpp"

#include <cmath>

#include "fpinn/specfun.hpp"

namespace fpinn {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double ProblemSpec::initial_value(double x) const { return amp_a * std::sin(k_mode * kPi * x); }

double ProblemSpec::initial_velocity(double x) const { return amp_b * std::sin(k_mode * kPi * x); }

double ProblemSpec::source(double, double) const { return 0.0; }

double ProblemSpec::exact_time_profile(double t) const {
  if (!has_exact) throw std::logic_error("problem '" + name + "' has no exact solution");
  if (t == 0.0) return amp_a;
  const double z = -lambda * std::pow(t, alpha);
  return amp_a * mittag_leffler({alpha, 1.0}, z) + amp_b * t * mittag_leffler({alpha, 2.0}, z);
}

double ProblemSpec::exact_time_profile_derivative(double t) const {
  if (!has_exact) throw std::logic_error("problem '" + name + "' has no exact solution");
  if (t == 0.0) return amp_b;
  // d/dt E_{a,1}(-l t^a) = -l t^(a-1) E_{a,a}(-l t^a);  d/dt [t E_{a,2}] = E_{a,1}
  const double z = -lambda * std::pow(t, alpha);
  return -amp_a * lambda * std::pow(t, alpha - 1.0) * mittag_leffler({alpha, alpha}, z) +
         amp_b * mittag_leffler({alpha, 1.0}, z);
}

double ProblemSpec::exact_solution(double t, double x) const {
  return exact_time_profile(t) * std::sin(k_mode * kPi * x);
}

double ProblemSpec::spatial_apply(double u, double u_x, double u_xx, double f) const {
  if (op == SpatialOperatorKind::LinearDiffusion) return -diffusion_coef * u_xx - f;
  return u * u_x - viscosity * u_xx;
}

void ProblemSpec::validate() const {
  if (!(T > 0.0)) throw std::invalid_argument("problem: T must be positive");
  if (!(x_hi > x_lo)) throw std::invalid_argument("problem: empty spatial domain");
  if (!(alpha > 1.0 && alpha < 2.0))
    throw std::invalid_argument("problem: alpha must lie in (1,2)");
  if (has_exact && op != SpatialOperatorKind::LinearDiffusion)
    throw std::invalid_argument("problem: exact solutions exist only for linear cases");
}

ProblemSpec problem_by_name(const std::string& name, std::optional<double> alpha,
                            std::optional<double> T, std::optional<int> k_mode,
                            std::optional<double> lambda) {
  ProblemSpec p;
  p.name = name;
  if (name == "dw_eq19") {
    p.T = 1.0;
    p.x_lo = 0.0;
    p.x_hi = 1.0;
    p.alpha = 1.5;
    p.op = SpatialOperatorKind::LinearDiffusion;
    p.k_mode = 1;
    p.lambda = kPi * kPi;
    p.diffusion_coef = 1.0;
    p.amp_a = 2.0;
    p.amp_b = -1.0;
    p.has_exact = true;
  } else if (name == "dw_eq24") {
    p.T = 2.0;
    p.x_lo = 0.0;
    p.x_hi = 1.0;
    p.alpha = 1.5;
    p.op = SpatialOperatorKind::LinearDiffusion;
    p.k_mode = 1;
    p.lambda = 1.0;
    p.amp_a = 1.0;
    p.amp_b = -0.5;
    p.has_exact = true;
  } else if (name == "burgers_eq26") {
    p.T = 1.0;
    p.x_lo = -1.0;
    p.x_hi = 1.0;
    p.alpha = 1.8;
    p.op = SpatialOperatorKind::Burgers;
    p.viscosity = 0.01 / kPi;
    p.k_mode = 1;
    p.amp_a = -1.0;
    p.amp_b = 1.0;
    p.has_exact = false;
  } else {
    throw std::invalid_argument("unknown problem: " + name +
                                " (expected dw_eq19 | dw_eq24 | burgers_eq26)");
  }
  if (alpha) p.alpha = *alpha;
  if (T) p.T = *T;
  if (k_mode) p.k_mode = *k_mode;
  if (lambda) p.lambda = *lambda;
  // eq24's diffusion coefficient is tied to (lambda, k)
  if (name == "dw_eq24")
    p.diffusion_coef = p.lambda / (p.k_mode * p.k_mode * kPi * kPi);
  p.validate();
  return p;
}

}  // namespace fpinn
