#include "fpinn/pinn.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "fpinn/parallel.hpp"
#include "fpinn/rng.hpp"

namespace fpinn {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr std::size_t kInteriorChunk = 128;
constexpr std::size_t kPointChunk = 512;

std::uint64_t node_stream(int iteration, std::uint64_t salt, std::size_t index) {
  return (static_cast<std::uint64_t>(iteration) << 40) ^ (salt << 36) ^ index;
}
}  // namespace

PinnAssembler::PinnAssembler(const ProblemSpec& problem, const EstimatorConfig& estimator)
    : problem_(problem), cfg_(estimator) {
  cfg_.validate();
  if (scheme_order_n(cfg_.scheme) != 2)
    throw std::invalid_argument("PinnAssembler: diffusion-wave training needs an order-(1,2) scheme");
  if (!scheme_is_monte_carlo(cfg_.scheme))
    gj_rule_ = gauss_jacobi_rule(cfg_.m_points, cfg_.alpha, 2);
}

ShiftedNodes PinnAssembler::nodes_for(double t, int iteration, std::uint64_t stream_salt,
                                      std::size_t index) const {
  if (scheme_is_monte_carlo(cfg_.scheme)) {
    const QuadratureRule rule = sample_beta_nodes(
        cfg_.m_points, 2.0 - cfg_.alpha, cfg_.seed, node_stream(iteration, stream_salt, index));
    return make_shifted_nodes(cfg_, rule, t);
  }
  return make_shifted_nodes(cfg_, gj_rule_, t);
}

std::vector<double> PinnAssembler::pde_residual(const SpaceTimeField& f, std::span<const Pt> pts,
                                                int iteration, std::uint64_t stream_salt,
                                                QueryStats* stats) const {
  const std::size_t n = pts.size();
  const int m = cfg_.m_points;
  const bool direct = !scheme_is_transformed(cfg_.scheme);
  std::vector<double> out(n);

  std::vector<PointJets> packs(n);
  f.jets(pts, packs);

  std::vector<Pt> base(n);
  for (std::size_t i = 0; i < n; ++i) base[i] = {0.0, pts[i].x};
  std::vector<double> u0(n), ut0(n);
  f.values_and_dt(base, u0, ut0);

  // one flattened shifted batch of size N*M
  std::vector<ShiftedNodes> nodes(n);
  std::vector<Pt> shifted(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    nodes[i] = nodes_for(pts[i].t, iteration, stream_salt, i);
    for (int j = 0; j < m; ++j) shifted[i * m + j] = {nodes[i].s[j], pts[i].x};
  }
  std::vector<double> q(n * m);
  if (direct) {
    std::vector<double> dummy(n * m);
    f.values_and_dt(shifted, dummy, q);
    if (stats) stats->shifted_derivative += static_cast<long>(n) * m;
  } else {
    f.values(shifted, q);
    // assemble takes increments f(t) - f(s_j)
    for (std::size_t i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) q[i * m + j] = packs[i].u - q[i * m + j];
    if (stats) stats->shifted_value += static_cast<long>(n) * m;
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto& pk = packs[i];
    const double est =
        caputo_assemble(cfg_, nodes[i], pts[i].t, pk.u, u0[i], pk.u_t, ut0[i],
                        {q.data() + i * m, static_cast<std::size_t>(m)});
    out[i] = est + problem_.spatial_apply(pk.u, pk.u_x, pk.u_xx,
                                          problem_.source(pts[i].t, pts[i].x));
  }
  return out;
}

LossBreakdown PinnAssembler::loss(const NetworkParams& net, const CollocationSet& colloc,
                                  double weight_bd, double weight_init, int iteration,
                                  std::span<double> grad, QueryStats* stats) const {
  const NetworkEval ev(net);
  const double* theta = net.params.data();
  const bool want_grad = !grad.empty();
  if (want_grad && grad.size() != ev.n_params())
    throw std::invalid_argument("PinnAssembler::loss: gradient span has the wrong length");

  const std::size_t n_in = colloc.interior.size();
  const std::size_t n_bd = colloc.boundary.size();
  const std::size_t n_init = colloc.initial_x.size();
  const int m = cfg_.m_points;
  const bool direct = !scheme_is_transformed(cfg_.scheme);
  const bool burgers = problem_.op == SpatialOperatorKind::Burgers;

  const std::size_t chunks_in = chunk_count(n_in, kInteriorChunk);
  const std::size_t chunks_bd = chunk_count(n_bd, kPointChunk);
  const std::size_t chunks_init = chunk_count(n_init, kPointChunk);
  const std::size_t chunks_total = chunks_in + chunks_bd + chunks_init;

  std::vector<double> chunk_loss(chunks_total, 0.0);
  std::vector<double> chunk_grad;
  if (want_grad) chunk_grad.assign(chunks_total * ev.n_params(), 0.0);

  std::atomic<long> count_value{0}, count_deriv{0};

  // ---- interior ----
  parallel_for_chunks(n_in, kInteriorChunk, [&](std::size_t ci, std::size_t b, std::size_t e) {
    NetworkEval::Workspace ws;
    double acc = 0.0;
    std::span<double> g;
    if (want_grad) g = {chunk_grad.data() + ci * ev.n_params(), ev.n_params()};
    std::vector<double> q(m);
    long local_val = 0, local_der = 0;

    for (std::size_t i = b; i < e; ++i) {
      const Pt p = colloc.interior[i];
      const PointJets pk = ev.jets(theta, p.t, p.x, ws);
      double u0, ut0;
      ev.value_and_dt(theta, 0.0, p.x, ws, u0, ut0);

      const ShiftedNodes nodes = nodes_for(p.t, iteration, 0, i);
      if (direct) {
        for (int j = 0; j < m; ++j) {
          double uu;
          ev.value_and_dt(theta, nodes.s[j], p.x, ws, uu, q[j]);
        }
        local_der += m;
      } else {
        // assemble takes increments u(t) - u(s_j)
        for (int j = 0; j < m; ++j) q[j] = pk.u - ev.value(theta, nodes.s[j], p.x, ws);
        local_val += m;
      }

      const double est = caputo_assemble(cfg_, nodes, p.t, pk.u, u0, pk.u_t, ut0, q);
      const double fval = problem_.source(p.t, p.x);
      const double r = est + problem_.spatial_apply(pk.u, pk.u_x, pk.u_xx, fval);
      acc += r * r;

      if (want_grad) {
        const EstimatorCoeffs co = caputo_coefficients(cfg_, nodes, p.t);
        const double rho = 2.0 * r / static_cast<double>(n_in);

        QuerySeeds main;
        main.wu = rho * co.c_u_t;
        main.wut = rho * co.c_ut_t;
        if (burgers) {
          main.wu += rho * pk.u_x;       // d(u u_x)/du
          main.wux = rho * pk.u;         // d(u u_x)/du_x
          main.wuxx = -rho * problem_.viscosity;
        } else {
          main.wuxx = -rho * problem_.diffusion_coef;
        }
        ev.seeded_gradient(theta, p.t, p.x, main, ws, g);

        QuerySeeds at0;
        at0.wu = rho * co.c_u_0;
        at0.wut = rho * co.c_ut_0;
        ev.seeded_gradient(theta, 0.0, p.x, at0, ws, g);

        for (int j = 0; j < m; ++j) {
          QuerySeeds sh;
          if (co.shifted_uses_derivative)
            sh.wut = rho * co.c_shift[j];
          else
            sh.wu = rho * co.c_shift[j];
          ev.seeded_gradient(theta, nodes.s[j], p.x, sh, ws, g);
        }
      }
    }
    chunk_loss[ci] = acc;
    count_value += local_val;
    count_deriv += local_der;
  });

  // ---- boundary ----
  parallel_for_chunks(n_bd, kPointChunk, [&](std::size_t ci, std::size_t b, std::size_t e) {
    NetworkEval::Workspace ws;
    const std::size_t slot = chunks_in + ci;
    double acc = 0.0;
    std::span<double> g;
    if (want_grad) g = {chunk_grad.data() + slot * ev.n_params(), ev.n_params()};
    for (std::size_t i = b; i < e; ++i) {
      const Pt p = colloc.boundary[i];
      const double u = ev.value(theta, p.t, p.x, ws);
      acc += u * u;
      if (want_grad && weight_bd != 0.0) {
        QuerySeeds s;
        s.wu = weight_bd * 2.0 * u / static_cast<double>(n_bd);
        ev.seeded_gradient(theta, p.t, p.x, s, ws, g);
      }
    }
    chunk_loss[slot] = acc;
  });

  // ---- initial ----
  parallel_for_chunks(n_init, kPointChunk, [&](std::size_t ci, std::size_t b, std::size_t e) {
    NetworkEval::Workspace ws;
    const std::size_t slot = chunks_in + chunks_bd + ci;
    double acc = 0.0;
    std::span<double> g;
    if (want_grad) g = {chunk_grad.data() + slot * ev.n_params(), ev.n_params()};
    for (std::size_t i = b; i < e; ++i) {
      const double x = colloc.initial_x[i];
      double u, ut;
      ev.value_and_dt(theta, 0.0, x, ws, u, ut);
      const double du = u - problem_.initial_value(x);
      const double dv = ut - problem_.initial_velocity(x);
      acc += du * du + dv * dv;
      if (want_grad && weight_init != 0.0) {
        QuerySeeds s;
        s.wu = weight_init * 2.0 * du / static_cast<double>(n_init);
        s.wut = weight_init * 2.0 * dv / static_cast<double>(n_init);
        ev.seeded_gradient(theta, 0.0, x, s, ws, g);
      }
    }
    chunk_loss[slot] = acc;
  });

  if (stats) {
    stats->shifted_value += count_value.load();
    stats->shifted_derivative += count_deriv.load();
  }

  LossBreakdown out;
  double in_sum = 0.0, bd_sum = 0.0, init_sum = 0.0;
  for (std::size_t c = 0; c < chunks_in; ++c) in_sum += chunk_loss[c];
  for (std::size_t c = 0; c < chunks_bd; ++c) bd_sum += chunk_loss[chunks_in + c];
  for (std::size_t c = 0; c < chunks_init; ++c) init_sum += chunk_loss[chunks_in + chunks_bd + c];
  out.interior = in_sum / std::max<std::size_t>(n_in, 1);
  out.boundary = bd_sum / std::max<std::size_t>(n_bd, 1);
  out.initial = init_sum / std::max<std::size_t>(n_init, 1);
  out.total = out.interior + weight_bd * out.boundary + weight_init * out.initial;
  out.finite = std::isfinite(out.total);

  if (want_grad) {
    // deterministic reduction in chunk order
    for (std::size_t c = 0; c < chunks_total; ++c) {
      const double* src = chunk_grad.data() + c * ev.n_params();
      for (std::size_t k = 0; k < ev.n_params(); ++k) grad[k] += src[k];
    }
  }
  return out;
}

double test_grid_error(const ProblemSpec& problem, const NetworkParams& net, int n) {
  const NetworkEval ev(net);
  NetworkEval::Workspace ws;
  std::vector<double> pred, exact;
  pred.reserve(static_cast<std::size_t>(n) * n);
  exact.reserve(static_cast<std::size_t>(n) * n);
  for (int it = 0; it < n; ++it) {
    const double t = problem.T * it / (n - 1);
    const double g = problem.exact_time_profile(t);
    for (int ix = 0; ix < n; ++ix) {
      const double x = problem.x_lo + (problem.x_hi - problem.x_lo) * ix / (n - 1);
      pred.push_back(ev.value(net.params.data(), t, x, ws));
      exact.push_back(g * std::sin(problem.k_mode * kPi * x));
    }
  }
  return l2_relative_error(pred, exact);
}

TrainReport train(const ProblemSpec& problem, const TrainConfig& cfg) {
  problem.validate();
  std::vector<int> widths;
  widths.push_back(2);
  for (int i = 0; i < cfg.hidden_layers; ++i) widths.push_back(cfg.hidden_width);
  widths.push_back(1);

  TrainReport report;
  const std::uint64_t net_seed = RngStream(cfg.seed, "net-init").next_u64();
  report.params = init_network(widths, net_seed);

  EstimatorConfig est = cfg.estimator;
  est.alpha = problem.alpha;
  if (est.seed == 0) est.seed = RngStream(cfg.seed, "estimator").next_u64();
  const PinnAssembler assembler(problem, est);

  CollocationSet colloc =
      uniform_collocation(problem, cfg.n_interior, cfg.n_boundary, cfg.n_initial, cfg.seed, 0);

  AdamOptimizer adam(report.params.params.size(), cfg.lr);
  std::vector<double> grad(report.params.params.size());

  double initial_loss = -1.0;

  if (cfg.iterations == 0) {
    // evaluation-only run: report the starting losses and error
    const LossBreakdown lb =
        assembler.loss(report.params, colloc, cfg.weight_bd, cfg.weight_init, 0, {});
    IterationRecord rec;
    rec.iteration = 0;
    rec.loss_in = lb.interior;
    rec.loss_bd = lb.boundary;
    rec.loss_init = lb.initial;
    if (problem.has_exact) rec.e_r = test_grid_error(problem, report.params, cfg.test_grid);
    report.iterations.push_back(rec);
    report.final_e_r = rec.e_r;
    return report;
  }

  for (int iter = 1; iter <= cfg.iterations && !report.diverged; ++iter) {
    const auto t0 = std::chrono::steady_clock::now();
    double sum_in = 0.0, sum_bd = 0.0, sum_init = 0.0;
    int epochs_done = 0;

    for (int epoch = 0; epoch < cfg.epochs_per_iter; ++epoch) {
      std::fill(grad.begin(), grad.end(), 0.0);
      const LossBreakdown lb =
          assembler.loss(report.params, colloc, cfg.weight_bd, cfg.weight_init, iter, grad);
      if (initial_loss < 0.0) initial_loss = lb.total;
      if (!lb.finite || lb.total > 1e6 * initial_loss) {
        report.diverged = true;
        break;
      }
      adam.step(report.params.params, grad);
      sum_in += lb.interior;
      sum_bd += lb.boundary;
      sum_init += lb.initial;
      ++epochs_done;
      if (cfg.log_every > 0 && (epoch + 1) % cfg.log_every == 0)
        std::fprintf(stderr, "[train] iter %d epoch %d loss %.6g\n", iter, epoch + 1, lb.total);
    }

    IterationRecord rec;
    rec.iteration = iter;
    if (epochs_done > 0) {
      rec.loss_in = sum_in / epochs_done;
      rec.loss_bd = sum_bd / epochs_done;
      rec.loss_init = sum_init / epochs_done;
    }
    if (problem.has_exact) rec.e_r = test_grid_error(problem, report.params, cfg.test_grid);
    rec.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.iterations.push_back(rec);
    if (cfg.record_clouds) report.clouds.push_back(colloc.interior);

    if (report.diverged || iter == cfg.iterations) break;

    // refresh collocation: all three sets uniformly; under RAD the interior
    // set instead persists with a residual-driven substitution
    CollocationSet fresh = uniform_collocation(problem, cfg.n_interior, cfg.n_boundary,
                                               cfg.n_initial, cfg.seed, iter);
    if (cfg.resample == ResamplePolicy::RAD) {
      NetworkField field(report.params);
      RadConfig rad = cfg.rad;
      auto residual_fn = [&](std::span<const Pt> pts) {
        return assembler.pde_residual(field, pts, iter, /*stream_salt=*/1);
      };
      CollocationSet substituted =
          rad_resample(problem, rad, colloc, residual_fn, cfg.seed, iter);
      colloc.interior = std::move(substituted.interior);
      colloc.boundary = std::move(fresh.boundary);
      colloc.initial_x = std::move(fresh.initial_x);
    } else {
      colloc = std::move(fresh);
    }
  }

  if (problem.has_exact && !report.iterations.empty())
    report.final_e_r = report.iterations.back().e_r;
  return report;
}

}  // namespace fpinn
