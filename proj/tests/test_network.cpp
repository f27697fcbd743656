#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "fpinn/network.hpp"
#include "fpinn/rng.hpp"

using namespace fpinn;

namespace {
NetworkEval::Workspace ws;

double rel(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-14);
}
}  // namespace

TEST_CASE("parameter count for the reference architecture") {
  std::vector<int> widths = {2, 20, 20, 20, 20, 20, 20, 20, 1};
  CHECK(param_count(widths) == 2601);
}

TEST_CASE("initialization is deterministic in the seed") {
  const auto a = init_network({2, 8, 8, 1}, 42);
  const auto b = init_network({2, 8, 8, 1}, 42);
  const auto c = init_network({2, 8, 8, 1}, 43);
  CHECK(a.params == b.params);
  CHECK(a.params != c.params);
  // biases zero after every weight block
  bool any_nonzero_weight = false;
  for (double p : a.params) any_nonzero_weight |= (p != 0.0);
  CHECK(any_nonzero_weight);
}

TEST_CASE("zero network with output bias is constant") {
  NetworkParams net;
  net.widths = {2, 6, 6, 1};
  net.params.assign(param_count(net.widths), 0.0);
  net.params.back() = 1.75;  // output bias is the last parameter
  NetworkEval ev(net);
  const auto j = ev.jets(net.params.data(), 0.3, -0.2, ws);
  CHECK(j.u == 1.75);
  CHECK(j.u_t == 0.0);
  CHECK(j.u_x == 0.0);
  CHECK(j.u_xx == 0.0);
}

TEST_CASE("single tanh unit has the closed-form jets") {
  NetworkParams net;
  net.widths = {2, 1, 1};
  // layer0: W=[1,1], b=0; layer1: W=[1], b=0 -> u = tanh(t+x)
  net.params = {1.0, 1.0, 0.0, 1.0, 0.0};
  NetworkEval ev(net);
  const double t = 0.4, x = -0.1;
  const auto j = ev.jets(net.params.data(), t, x, ws);
  const double u = std::tanh(t + x);
  const double p = 1.0 - u * u;
  CHECK(rel(j.u, u) <= 1e-15);
  CHECK(rel(j.u_t, p) <= 1e-14);
  CHECK(rel(j.u_x, p) <= 1e-14);
  CHECK(rel(j.u_xx, -2.0 * u * p) <= 1e-13);
}

TEST_CASE("input derivatives match central finite differences") {
  RngStream rng(7, "net-fd-test");
  for (int trial = 0; trial < 100; ++trial) {
    const auto net = init_network({2, 7, 5, 1}, 100 + trial);
    NetworkEval ev(net);
    const double t = 2.0 * rng.uniform01() - 0.5;
    const double x = 2.0 * rng.uniform01() - 1.0;
    const auto j = ev.jets(net.params.data(), t, x, ws);

    const double h = 1e-4;
    auto u = [&](double tt, double xx) { return ev.value(net.params.data(), tt, xx, ws); };
    const double ut_fd = (u(t + h, x) - u(t - h, x)) / (2 * h);
    const double ux_fd = (u(t, x + h) - u(t, x - h)) / (2 * h);
    const double uxx_fd = (u(t, x + h) - 2 * u(t, x) + u(t, x - h)) / (h * h);
    CAPTURE(trial);
    CHECK(std::abs(j.u_t - ut_fd) <= 1e-6 * std::max(1.0, std::abs(ut_fd)));
    CHECK(std::abs(j.u_x - ux_fd) <= 1e-6 * std::max(1.0, std::abs(ux_fd)));
    CHECK(std::abs(j.u_xx - uxx_fd) <= 1e-5 * std::max(1.0, std::abs(uxx_fd)));
  }
}

TEST_CASE("slot variants agree bit-exactly on the value") {
  const auto net = init_network({2, 9, 9, 1}, 5);
  NetworkEval ev(net);
  for (double t : {0.1, 0.9})
    for (double x : {-0.7, 0.3}) {
      const double v1 = ev.value(net.params.data(), t, x, ws);
      double v2, dt2;
      ev.value_and_dt(net.params.data(), t, x, ws, v2, dt2);
      const auto j = ev.jets(net.params.data(), t, x, ws);
      CHECK(v1 == v2);
      CHECK(v1 == j.u);
      CHECK(dt2 == j.u_t);
    }
}

TEST_CASE("gradient of u^2 at a zero network touches only the output bias") {
  NetworkParams net;
  net.widths = {2, 4, 1};
  net.params.assign(param_count(net.widths), 0.0);
  net.params.back() = 0.8;
  NetworkEval ev(net);
  std::vector<double> grad(net.params.size(), 0.0);
  QuerySeeds seeds;
  seeds.wu = 2.0 * 0.8;  // d(u^2)/du at u = b
  ev.seeded_gradient(net.params.data(), 0.2, 0.5, seeds, ws, grad);
  for (std::size_t i = 0; i + 1 < grad.size(); ++i) CHECK(grad[i] == 0.0);
  CHECK(grad.back() == doctest::Approx(1.6).epsilon(1e-15));
}

TEST_CASE("seeded gradients match directional finite differences") {
  RngStream rng(12, "net-grad-fd");
  for (int trial = 0; trial < 25; ++trial) {
    auto net = init_network({2, 6, 6, 1}, 500 + trial);
    NetworkEval ev(net);
    const double t = rng.uniform01(), x = 2.0 * rng.uniform01() - 1.0;

    QuerySeeds seeds;
    seeds.wu = 2.0 * rng.uniform01() - 1.0;
    seeds.wut = 2.0 * rng.uniform01() - 1.0;
    seeds.wux = 2.0 * rng.uniform01() - 1.0;
    seeds.wuxx = 2.0 * rng.uniform01() - 1.0;

    auto scalar = [&](const std::vector<double>& p) {
      NetworkEval e2(net);
      const auto j = e2.jets(p.data(), t, x, ws);
      return seeds.wu * j.u + seeds.wut * j.u_t + seeds.wux * j.u_x + seeds.wuxx * j.u_xx;
    };

    std::vector<double> grad(net.params.size(), 0.0);
    ev.seeded_gradient(net.params.data(), t, x, seeds, ws, grad);

    std::vector<double> dir(net.params.size());
    for (auto& d : dir) d = 2.0 * rng.uniform01() - 1.0;
    double dot = 0.0;
    for (std::size_t i = 0; i < dir.size(); ++i) dot += grad[i] * dir[i];

    const double h = 1e-5;
    auto plus = net.params, minus = net.params;
    for (std::size_t i = 0; i < dir.size(); ++i) {
      plus[i] += h * dir[i];
      minus[i] -= h * dir[i];
    }
    const double fd = (scalar(plus) - scalar(minus)) / (2 * h);
    CAPTURE(trial);
    CHECK(std::abs(dot - fd) <= 1e-5 * std::max(1.0, std::abs(fd)));
  }
}

TEST_CASE("gradient accumulates across calls") {
  const auto net = init_network({2, 5, 1}, 3);
  NetworkEval ev(net);
  std::vector<double> g1(net.params.size(), 0.0), g2(net.params.size(), 0.0);
  QuerySeeds s;
  s.wu = 1.0;
  ev.seeded_gradient(net.params.data(), 0.3, 0.4, s, ws, g1);
  ev.seeded_gradient(net.params.data(), 0.3, 0.4, s, ws, g2);
  ev.seeded_gradient(net.params.data(), 0.3, 0.4, s, ws, g2);
  for (std::size_t i = 0; i < g1.size(); ++i) CHECK(g2[i] == doctest::Approx(2.0 * g1[i]));
}

TEST_CASE("adam first step moves by about -lr sign(g)") {
  AdamOptimizer opt(3, 1e-3);
  std::vector<double> p = {1.0, -2.0, 0.5};
  const std::vector<double> g = {0.5, -0.25, 0.0};
  auto p0 = p;
  opt.step(p, g);
  CHECK(p[0] == doctest::Approx(p0[0] - 1e-3).epsilon(1e-6));
  CHECK(p[1] == doctest::Approx(p0[1] + 1e-3).epsilon(1e-6));
  CHECK(p[2] == p0[2]);  // zero gradient component stays put on step one
}

TEST_CASE("adam with zero gradient leaves parameters unchanged") {
  AdamOptimizer opt(2, 1e-2);
  std::vector<double> p = {0.3, -0.4};
  const std::vector<double> g = {0.0, 0.0};
  opt.step(p, g);
  opt.step(p, g);
  CHECK(p[0] == 0.3);
  CHECK(p[1] == -0.4);
}

TEST_CASE("adam moves monotonically against a constant gradient") {
  AdamOptimizer opt(1, 1e-3);
  std::vector<double> p = {1.0};
  const std::vector<double> g = {2.0};
  double prev = p[0];
  for (int i = 0; i < 5; ++i) {
    opt.step(p, g);
    CHECK(p[0] < prev);
    prev = p[0];
  }
}

TEST_CASE("checkpoint round trip is bit exact") {
  const auto net = init_network({2, 11, 7, 1}, 77);
  const auto path = std::filesystem::temp_directory_path() / "fpinn_ckpt_test.txt";
  save_checkpoint(path.string(), net, 12);
  const auto ck = load_checkpoint(path.string());
  CHECK(ck.iteration == 12);
  CHECK(ck.net.widths == net.widths);
  CHECK(ck.net.init_seed == net.init_seed);
  REQUIRE(ck.net.params.size() == net.params.size());
  for (std::size_t i = 0; i < net.params.size(); ++i) CHECK(ck.net.params[i] == net.params[i]);
  std::filesystem::remove(path);
}
