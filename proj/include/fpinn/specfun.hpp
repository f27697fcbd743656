#pragma once

#include <stdexcept>

namespace fpinn {

/// Raised when a special-function evaluation cannot certify its accuracy
/// target from internal error estimates.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double best, double err_estimate)
      : std::runtime_error(what), best_estimate(best), error_estimate(err_estimate) {}
  double best_estimate;
  double error_estimate;
};

/// Gamma function on the real line (Lanczos g=7, 9 coefficients, with
/// reflection below 0.5). Throws std::domain_error at the poles 0, -1, -2, ...
double gamma_fn(double x);

/// 1/Gamma(x); returns 0 at the poles of Gamma instead of throwing.
double reciprocal_gamma(double x);

/// Parameters of the two-parameter Mittag-Leffler function E_{alpha,beta}.
struct MLParams {
  double alpha;
  double beta;
  MLParams(double a, double b) : alpha(a), beta(b) {
    if (!(a > 0.0) || !(b > 0.0))
      throw std::invalid_argument("MLParams: alpha and beta must be positive");
  }
};

// E_{alpha,beta}(z) = sum_k z^k / Gamma(alpha k + beta) for real z.
// Strategy switches by region: plain Taylor for |z| <= 1, compensated Taylor
// with a cancellation guard up to |z| = 8, and for deeply negative z a global
// evaluation that splits the inverse-Laplace representation into the residue
// pair plus a branch-cut integral (Kummer-transformed series at alpha = 1).
// Certified to ~1e-10 relative on z in [-25, 5], alpha in [1, 2],
// beta in [0.5, 3]; throws AccuracyError when the internal estimate fails.
double mittag_leffler(const MLParams& p, double z);

}  // namespace fpinn
