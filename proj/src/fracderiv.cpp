#include "fpinn/fracderiv.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fpinn/specfun.hpp"

namespace fpinn {

bool scheme_is_monte_carlo(Scheme s) {
  return s == Scheme::MC_I || s == Scheme::MC_II || s == Scheme::MC_Base;
}

bool scheme_is_transformed(Scheme s) { return s == Scheme::MC_II || s == Scheme::GJ_II; }

int scheme_order_n(Scheme s) {
  return (s == Scheme::MC_Base || s == Scheme::GJ_Base) ? 1 : 2;
}

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::MC_I: return "mc1";
    case Scheme::GJ_I: return "gj1";
    case Scheme::MC_II: return "mc2";
    case Scheme::GJ_II: return "gj2";
    case Scheme::MC_Base: return "mc-base";
    case Scheme::GJ_Base: return "gj-base";
  }
  return "?";
}

Scheme scheme_from_name(std::string_view name) {
  if (name == "mc1") return Scheme::MC_I;
  if (name == "gj1") return Scheme::GJ_I;
  if (name == "mc2") return Scheme::MC_II;
  if (name == "gj2") return Scheme::GJ_II;
  if (name == "mc-base") return Scheme::MC_Base;
  if (name == "gj-base") return Scheme::GJ_Base;
  throw std::invalid_argument("unknown scheme: " + std::string(name));
}

double EstimatorConfig::default_epsilon(Scheme s) {
  switch (s) {
    case Scheme::MC_I: return 1e-10;
    case Scheme::MC_II: return 1e-7;
    case Scheme::MC_Base: return 1e-10;
    default: return 0.0;  // GJ schemes ignore the clip
  }
}

double EstimatorConfig::epsilon() const {
  return epsilon_clip >= 0.0 ? epsilon_clip : default_epsilon(scheme);
}

void EstimatorConfig::validate() const {
  const int n = scheme_order_n(scheme);
  if (!(alpha > n - 1 && alpha < n))
    throw std::invalid_argument(std::string("EstimatorConfig: scheme ") + scheme_name(scheme) +
                                " requires alpha in (" + std::to_string(n - 1) + "," +
                                std::to_string(n) + ")");
  if (m_points < 1) throw std::invalid_argument("EstimatorConfig: m_points must be positive");
}

void TemporalField::value_batch(std::span<const double> t, std::span<double> out) const {
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = value(t[i]);
}

void TemporalField::first_derivative_batch(std::span<const double> t, std::span<double> out) const {
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = first_derivative(t[i]);
}

void TemporalField::value_increment_batch(double t_hi, std::span<const double> t_lo,
                                          std::span<double> out) const {
  for (std::size_t i = 0; i < t_lo.size(); ++i) out[i] = value_increment(t_hi, t_lo[i]);
}

QuadratureRule make_rule(const EstimatorConfig& cfg, std::uint64_t stream) {
  cfg.validate();
  const int n = scheme_order_n(cfg.scheme);
  if (scheme_is_monte_carlo(cfg.scheme))
    return sample_beta_nodes(cfg.m_points, n - cfg.alpha, cfg.seed, stream);
  return gauss_jacobi_rule(cfg.m_points, cfg.alpha, n);
}

ShiftedNodes make_shifted_nodes(const EstimatorConfig& cfg, const QuadratureRule& rule, double t) {
  if (!(t > 0.0)) throw std::domain_error("caputo estimator: t must be positive");
  const int m = static_cast<int>(rule.size());
  const bool mc = scheme_is_monte_carlo(cfg.scheme);
  const int n = scheme_order_n(cfg.scheme);
  const double eps = cfg.epsilon();
  const double mc_norm = 1.0 / ((n - cfg.alpha) * m);

  ShiftedNodes out;
  out.s.resize(m);
  out.h.resize(m);
  out.d.resize(m);
  out.w.resize(m);
  for (int j = 0; j < m; ++j) {
    const double s = t - t * rule.nodes[j];
    const double h = t - s;  // lag to the rounded shifted time
    out.s[j] = s;
    out.h[j] = h;
    out.d[j] = mc ? std::max(h, eps) : h;
    out.w[j] = mc ? mc_norm : rule.weights[j];
  }
  return out;
}

namespace {

struct Prefactors {
  double inv_g;       // 1/Gamma(n - alpha)
  double t_pow_b;     // boundary power: t^(1-alpha) for n=2, t^-alpha for n=1
  double local_coef;  // (alpha-1) t^-alpha           (n=2, transformed only)
  double sum_coef;    // scheme-specific sum prefactor (positive magnitude)
};

Prefactors prefactors(const EstimatorConfig& cfg, double t) {
  const int n = scheme_order_n(cfg.scheme);
  const double a = cfg.alpha;
  Prefactors p{};
  p.inv_g = reciprocal_gamma(n - a);
  if (n == 2) {
    p.t_pow_b = std::pow(t, 1.0 - a);
    p.local_coef = (a - 1.0) * std::pow(t, -a);
    p.sum_coef = scheme_is_transformed(cfg.scheme)
                     ? a * (a - 1.0) * std::pow(t, 2.0 - a)
                     : (a - 1.0) * std::pow(t, 2.0 - a);
  } else {
    p.t_pow_b = std::pow(t, -a);
    p.local_coef = 0.0;
    p.sum_coef = a * std::pow(t, 1.0 - a);
  }
  return p;
}

}  // namespace

double caputo_assemble(const EstimatorConfig& cfg, const ShiftedNodes& nodes, double t,
                       double du0, double ut_t, double ut_0,
                       std::span<const double> shifted_q) {
  const Prefactors p = prefactors(cfg, t);
  const std::size_t m = nodes.s.size();

  if (scheme_order_n(cfg.scheme) == 1) {
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) acc += nodes.w[j] * shifted_q[j] / nodes.d[j];
    return p.inv_g * (du0 * p.t_pow_b + p.sum_coef * acc);
  }

  const double boundary = (ut_t - ut_0) * p.t_pow_b;
  if (!scheme_is_transformed(cfg.scheme)) {
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j)
      acc += nodes.w[j] * (ut_t - shifted_q[j]) / nodes.d[j];
    return p.inv_g * (boundary + p.sum_coef * acc);
  }

  const double local = p.local_coef * (du0 - t * ut_t);
  double acc = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double num = shifted_q[j] - nodes.h[j] * ut_t;
    acc += nodes.w[j] * num / (nodes.d[j] * nodes.d[j]);
  }
  return p.inv_g * (boundary - local - p.sum_coef * acc);
}

EstimatorCoeffs caputo_coefficients(const EstimatorConfig& cfg, const ShiftedNodes& nodes,
                                    double t) {
  const Prefactors p = prefactors(cfg, t);
  const std::size_t m = nodes.s.size();
  EstimatorCoeffs c;
  c.c_shift.resize(m);

  if (scheme_order_n(cfg.scheme) == 1) {
    double sum_inv_d = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double cj = p.inv_g * p.sum_coef * nodes.w[j] / nodes.d[j];
      c.c_shift[j] = -cj;
      sum_inv_d += cj;
    }
    c.c_u_t = p.inv_g * p.t_pow_b + sum_inv_d;
    c.c_u_0 = -p.inv_g * p.t_pow_b;
    return c;
  }

  if (!scheme_is_transformed(cfg.scheme)) {
    c.shifted_uses_derivative = true;
    double sum_inv_d = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double cj = p.inv_g * p.sum_coef * nodes.w[j] / nodes.d[j];
      c.c_shift[j] = -cj;
      sum_inv_d += cj;
    }
    c.c_ut_t = p.inv_g * p.t_pow_b + sum_inv_d;
    c.c_ut_0 = -p.inv_g * p.t_pow_b;
    return c;
  }

  double sum_inv_d2 = 0.0, sum_h_inv_d2 = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double base = p.inv_g * p.sum_coef * nodes.w[j] / (nodes.d[j] * nodes.d[j]);
    c.c_shift[j] = base;
    sum_inv_d2 += base;
    sum_h_inv_d2 += base * nodes.h[j];
  }
  c.c_ut_t = p.inv_g * (p.t_pow_b + p.local_coef * t) + sum_h_inv_d2;
  c.c_ut_0 = -p.inv_g * p.t_pow_b;
  c.c_u_t = -p.inv_g * p.local_coef - sum_inv_d2;
  c.c_u_0 = p.inv_g * p.local_coef;
  return c;
}

namespace {

double estimate_with_rule(const EstimatorConfig& cfg, const TemporalField& f, double t,
                          const QuadratureRule& rule) {
  const ShiftedNodes nodes = make_shifted_nodes(cfg, rule, t);
  const bool needs_dt = scheme_order_n(cfg.scheme) == 2;
  const bool direct = needs_dt && !scheme_is_transformed(cfg.scheme);
  // the direct (Type I) schemes touch f' only; baselines touch f only
  const double du0 = direct ? 0.0 : f.value_increment(t, 0.0);
  const double ut_t = needs_dt ? f.first_derivative(t) : 0.0;
  const double ut_0 = needs_dt ? f.first_derivative(0.0) : 0.0;

  std::vector<double> q(nodes.s.size());
  if (direct)
    f.first_derivative_batch(nodes.s, q);
  else
    f.value_increment_batch(t, nodes.s, q);
  return caputo_assemble(cfg, nodes, t, du0, ut_t, ut_0, q);
}

}  // namespace

double caputo_estimate(const EstimatorConfig& cfg, const TemporalField& f, double t) {
  return estimate_with_rule(cfg, f, t, make_rule(cfg, 0));
}

std::vector<double> caputo_estimate_batch(const EstimatorConfig& cfg, const TemporalField& f,
                                          std::span<const double> times) {
  cfg.validate();
  std::vector<double> out(times.size());
  if (times.empty()) return out;

  if (!scheme_is_monte_carlo(cfg.scheme)) {
    const QuadratureRule rule = make_rule(cfg, 0);
    // flatten all shifted evaluations into one query batch of size N*M
    std::vector<ShiftedNodes> nodes(times.size());
    std::vector<double> flat;
    flat.reserve(times.size() * rule.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
      nodes[i] = make_shifted_nodes(cfg, rule, times[i]);
      flat.insert(flat.end(), nodes[i].s.begin(), nodes[i].s.end());
    }
    std::vector<double> q(flat.size());
    const bool deriv_queries = scheme_order_n(cfg.scheme) == 2 && !scheme_is_transformed(cfg.scheme);
    if (deriv_queries) {
      f.first_derivative_batch(flat, q);
    } else {
      for (std::size_t i = 0; i < times.size(); ++i)
        f.value_increment_batch(times[i], nodes[i].s,
                                {q.data() + i * rule.size(), rule.size()});
    }
    const bool needs_dt = scheme_order_n(cfg.scheme) == 2;
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double t = times[i];
      std::span<const double> qi(q.data() + i * rule.size(), rule.size());
      out[i] = caputo_assemble(cfg, nodes[i], t, deriv_queries ? 0.0 : f.value(t),
                               deriv_queries ? 0.0 : f.value(0.0),
                               needs_dt ? f.first_derivative(t) : 0.0,
                               needs_dt ? f.first_derivative(0.0) : 0.0, qi);
    }
    return out;
  }

  // MC: per-query-point node stream keyed by (seed, index)
  for (std::size_t i = 0; i < times.size(); ++i)
    out[i] = estimate_with_rule(cfg, f, times[i], make_rule(cfg, i));
  return out;
}

double caputo_reference(double alpha, const TemporalField& f, double t, double tol) {
  if (!(alpha > 1.0 && alpha < 2.0))
    throw std::invalid_argument("caputo_reference: alpha must lie in (1,2)");
  if (!(t > 0.0)) throw std::domain_error("caputo_reference: t must be positive");
  if (tol < 1e-12) throw std::invalid_argument("caputo_reference: tol must be >= 1e-12");

  const double ut_t = f.first_derivative(t);
  const double ut_0 = f.first_derivative(0.0);
  const double u_t = f.value(t);
  const double u_0 = f.value(0.0);

  // transformed integrand: [f(t) - f(t - t tau) - h f'(t)] / h^2 * tau^(1-alpha)
  auto smooth = [&](double tau) {
    const double s = t - t * tau;
    const double h = t - s;
    return (f.value_increment(t, s) - h * ut_t) / (h * h);
  };

  static const auto g16 = gauss_legendre(16);
  static const auto g24 = gauss_legendre(24);
  constexpr int kPanels = 10;

  // dyadic panels toward both endpoints: tau -> 0 carries the weight
  // singularity, tau -> 1 sees the t^alpha origin behavior of solution-like
  // fields through f(t - t tau)
  std::vector<double> brk;
  for (int p = kPanels; p >= 1; --p) brk.push_back(std::ldexp(1.0, -p));
  for (int j = 2; j <= 12; ++j) brk.push_back(1.0 - std::ldexp(1.0, -j));
  brk.push_back(1.0);

  auto panel_integral = [&](const std::vector<double>& gx, const std::vector<double>& gw) {
    double total = 0.0;
    for (std::size_t p = 0; p + 1 < brk.size(); ++p) {
      const double lo = brk[p], hi = brk[p + 1];
      const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
      double acc = 0.0;
      for (std::size_t i = 0; i < gx.size(); ++i) {
        const double tau = mid + half * gx[i];
        acc += gw[i] * smooth(tau) * std::pow(tau, 1.0 - alpha);
      }
      total += acc * half;
    }
    return total;
  };

  // Taylor tail on [0, 2^-10] from stencil estimates of f'', f''', f''''
  // (6th/4th/2nd order differences of f').
  const double tauc = std::ldexp(1.0, -kPanels);
  const double hs = std::min(0.03 * std::max(t, 1.0), 0.25 * t);
  double fp[7];
  for (int k = -3; k <= 3; ++k) fp[k + 3] = (k == 0) ? ut_t : f.first_derivative(t + k * hs);
  const double d2 =
      (-fp[0] + 9.0 * fp[1] - 45.0 * fp[2] + 45.0 * fp[4] - 9.0 * fp[5] + fp[6]) / (60.0 * hs);
  const double d3 = (-fp[1] + 16.0 * fp[2] - 30.0 * fp[3] + 16.0 * fp[4] - fp[5]) / (12.0 * hs * hs);
  const double d4 = (-fp[1] + 2.0 * fp[2] - 2.0 * fp[4] + fp[5]) / (2.0 * hs * hs * hs);

  auto tail_moment = [&](double k) { return std::pow(tauc, k - alpha) / (k - alpha); };
  const double tail = -0.5 * d2 * tail_moment(2.0) + (t * d3 / 6.0) * tail_moment(3.0) -
                      (t * t * d4 / 24.0) * tail_moment(4.0);

  const double i16 = panel_integral(g16.first, g16.second) + tail;
  const double i24 = panel_integral(g24.first, g24.second) + tail;

  const double inv_g = reciprocal_gamma(2.0 - alpha);
  const double a = alpha;
  auto assemble = [&](double integral) {
    return inv_g * ((ut_t - ut_0) * std::pow(t, 1.0 - a) -
                    (a - 1.0) * ((u_t - u_0) - t * ut_t) * std::pow(t, -a) -
                    a * (a - 1.0) * std::pow(t, 2.0 - a) * integral);
  };

  const double v24 = assemble(i24);
  const double est = std::abs(v24 - assemble(i16)) + 1e-12 * std::abs(v24);
  if (est > tol)
    throw AccuracyError("caputo_reference: error estimate above tolerance", v24, est);
  return v24;
}

}  // namespace fpinn
