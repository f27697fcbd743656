#include "fpinn/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fpinn/rng.hpp"

namespace fpinn {

CollocationSet uniform_collocation(const ProblemSpec& p, int n_interior, int n_boundary,
                                   int n_initial, std::uint64_t seed, std::uint64_t stream) {
  if (n_interior < 1 || n_boundary < 1 || n_initial < 1)
    throw std::invalid_argument("uniform_collocation: counts must be positive");
  const double t_floor = kTimeFloorFraction * p.T;

  CollocationSet set;
  set.interior.resize(n_interior);
  RngStream rin(seed, "colloc-interior", stream);
  for (auto& q : set.interior) {
    q.t = t_floor + (p.T - t_floor) * rin.uniform01();
    q.x = p.x_lo + (p.x_hi - p.x_lo) * rin.uniform01();
  }

  set.boundary.resize(n_boundary);
  RngStream rbd(seed, "colloc-boundary", stream);
  for (auto& q : set.boundary) {
    q.t = p.T * rbd.uniform01();
    q.x = (rbd.next_u64() & 1) ? p.x_hi : p.x_lo;
  }

  set.initial_x.resize(n_initial);
  RngStream rin0(seed, "colloc-initial", stream);
  for (auto& x : set.initial_x) x = p.x_lo + (p.x_hi - p.x_lo) * rin0.uniform01();
  return set;
}

CollocationSet rad_resample(const ProblemSpec& p, const RadConfig& cfg,
                            const CollocationSet& current, const ResidualFn& residuals,
                            std::uint64_t seed, std::uint64_t stream) {
  const int n_in = static_cast<int>(current.interior.size());
  const int n_replace = static_cast<int>(std::ceil(cfg.replace_fraction * n_in));
  CollocationSet out = current;
  if (n_replace == 0) return out;

  const int pool_n = std::max(cfg.pool_factor * n_in, n_replace);
  const double t_floor = kTimeFloorFraction * p.T;
  std::vector<Pt> pool(pool_n);
  RngStream rng(seed, "rad-pool", stream);
  for (auto& q : pool) {
    q.t = t_floor + (p.T - t_floor) * rng.uniform01();
    q.x = p.x_lo + (p.x_hi - p.x_lo) * rng.uniform01();
  }

  std::vector<double> eps = residuals(pool);
  if (static_cast<int>(eps.size()) != pool_n)
    throw std::invalid_argument("rad_resample: residual batch size mismatch");

  double mean_pow = 0.0;
  for (double& e : eps) {
    e = std::pow(std::abs(e), cfg.power_k);
    mean_pow += e;
  }
  mean_pow /= pool_n;

  std::vector<double> weight(pool_n);
  if (mean_pow == 0.0) {
    std::fill(weight.begin(), weight.end(), 1.0);  // degenerate: uniform fallback
  } else {
    for (int i = 0; i < pool_n; ++i) weight[i] = eps[i] / mean_pow + cfg.offset_c;
  }

  // weighted draw without replacement via exponential keys u^(1/w)
  RngStream rsel(seed, "rad-select", stream);
  std::vector<std::pair<double, int>> keys(pool_n);
  for (int i = 0; i < pool_n; ++i)
    keys[i] = {std::pow(rsel.uniform01(), 1.0 / weight[i]), i};
  std::partial_sort(keys.begin(), keys.begin() + n_replace, keys.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first; });

  // overwrite a uniformly chosen subset of the interior points
  RngStream rrep(seed, "rad-replace", stream);
  std::vector<int> idx(n_in);
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < n_replace; ++i) {
    const int j = i + static_cast<int>(rrep.below(n_in - i));
    std::swap(idx[i], idx[j]);
  }
  for (int i = 0; i < n_replace; ++i) out.interior[idx[i]] = pool[keys[i].second];
  return out;
}

double l2_relative_error(std::span<const double> pred, std::span<const double> exact) {
  if (pred.size() != exact.size() || pred.empty())
    throw std::invalid_argument("l2_relative_error: size mismatch or empty input");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = pred[i] - exact[i];
    num += d * d;
    den += exact[i] * exact[i];
  }
  if (den == 0.0) throw std::domain_error("l2_relative_error: reference norm is zero");
  return std::sqrt(num) / std::sqrt(den);
}

}  // namespace fpinn
