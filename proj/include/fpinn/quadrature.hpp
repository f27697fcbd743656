#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace fpinn {

enum class RuleKind { GaussJacobi, MonteCarlo };

// An M-point rule for the weight tau^(n-1-alpha) on (0,1): nodes strictly
// increasing in the open interval, weights positive. For Monte Carlo rules
// the weights are all 1/M and the normalization of the Beta law lives in the
// estimator prefactors.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double alpha = 0.0;
  RuleKind kind = RuleKind::GaussJacobi;

  std::size_t size() const { return nodes.size(); }
};

/// Hard cap on rule size; accuracy of the Jacobi eigenproblem is known to
/// degrade well below this (warnings are issued by callers above 128).
inline constexpr int kMaxRulePoints = 512;
inline constexpr int kRuleDegradationWarning = 128;

// Gauss-Jacobi rule for int_0^1 g(tau) tau^(n-1-alpha) dtau, exact for
// polynomials of degree <= 2M-1. Built by Golub-Welsch: the symmetric
// tridiagonal Jacobi matrix of the (0, n-1-alpha) Jacobi recurrence on
// [-1,1], eigen-decomposed, then mapped affinely to [0,1] with the total
// mass rescaled by 2^-(n-alpha).
QuadratureRule gauss_jacobi_rule(int m, double alpha, int n);

/// Inverse-CDF transform of a uniform draw to Beta(a,1): u^(1/a).
double beta_from_uniform(double u, double a);

// M i.i.d. Beta(a,1) draws from the deterministic stream (seed, stream),
// sorted ascending, with equal weights 1/M.
QuadratureRule sample_beta_nodes(int m, double a, std::uint64_t seed,
                                 std::uint64_t stream = 0);

/// Gauss-Legendre nodes/weights on [-1,1], computed by Newton iteration.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

}  // namespace fpinn
