#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fpinn/field.hpp"
#include "fpinn/problems.hpp"

namespace fpinn {

/// Interior collocation times are floored at kTimeFloorFraction * T; the
/// estimator prefactors t^(1-alpha), t^-alpha diverge at t = 0.
inline constexpr double kTimeFloorFraction = 1e-6;

struct CollocationSet {
  std::vector<Pt> interior;         // (t,x) in (t_floor, T] x Omega
  std::vector<Pt> boundary;         // (t,x) on (0,T] x {x_lo, x_hi}
  std::vector<double> initial_x;    // x in Omega at t = 0
};

CollocationSet uniform_collocation(const ProblemSpec& p, int n_interior, int n_boundary,
                                   int n_initial, std::uint64_t seed, std::uint64_t stream = 0);

struct RadConfig {
  double power_k = 1.0;
  double offset_c = 1.0;
  int pool_factor = 10;             // candidate pool = pool_factor * n_interior
  double replace_fraction = 0.3;
};

/// Residual magnitudes of a candidate batch, in candidate order.
using ResidualFn = std::function<std::vector<double>(std::span<const Pt>)>;

// Draws a uniform candidate pool, forms selection probabilities
// p ~ eps^k / mean(eps^k) + c from |residuals|, picks ceil(frac * N_in)
// points without replacement, and overwrites a uniformly chosen subset of
// the interior set. Boundary/initial sets are untouched. All residuals zero
// falls back to a uniform draw.
CollocationSet rad_resample(const ProblemSpec& p, const RadConfig& cfg,
                            const CollocationSet& current, const ResidualFn& residuals,
                            std::uint64_t seed, std::uint64_t stream = 0);

/// sqrt(sum (pred-exact)^2) / sqrt(sum exact^2); throws on a zero denominator.
double l2_relative_error(std::span<const double> pred, std::span<const double> exact);

}  // namespace fpinn
