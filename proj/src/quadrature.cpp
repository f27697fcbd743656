#include "fpinn/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "fpinn/rng.hpp"

namespace fpinn {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Symmetric tridiagonal QL with implicit shifts, accumulating only the first
// components of the eigenvectors (all Golub-Welsch needs). d is the diagonal,
// e the subdiagonal; z must come in as the first unit vector.
void tql_first_components(std::vector<double>& d, std::vector<double>& e,
                          std::vector<double>& z) {
  const int n = static_cast<int>(d.size());
  if (n == 1) return;
  e.resize(n, 0.0);
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m != l) {
        if (iter++ == 60)
          throw std::runtime_error("gauss_jacobi_rule: tridiagonal QL failed to converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i = m - 1;
        for (; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          f = z[i + 1];
          z[i + 1] = s * z[i] + c * f;
          z[i] = c * z[i] - s * f;
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

QuadratureRule gauss_jacobi_rule(int m, double alpha, int n) {
  if (m < 1 || m > kMaxRulePoints)
    throw std::invalid_argument("gauss_jacobi_rule: M out of range [1,512]");
  if (n != 1 && n != 2)
    throw std::invalid_argument("gauss_jacobi_rule: n must be 1 or 2");
  if (!(alpha > n - 1 && alpha < n))
    throw std::invalid_argument("gauss_jacobi_rule: alpha must lie in (n-1, n)");

  const double bw = static_cast<double>(n - 1) - alpha;  // weight exponent in (-1,0)

  // Monic Jacobi(0, bw) recurrence coefficients on [-1,1].
  std::vector<double> d(m), e(m > 1 ? m - 1 : 0);
  d[0] = bw / (bw + 2.0);
  for (int k = 1; k < m; ++k) {
    const double t = 2.0 * k + bw;
    d[k] = bw * bw / (t * (t + 2.0));
  }
  for (int k = 1; k < m; ++k) {
    const double t = 2.0 * k + bw;
    const double bk = 4.0 * k * k * (k + bw) * (k + bw) / (t * t * (t + 1.0) * (t - 1.0));
    e[k - 1] = std::sqrt(bk);
  }

  std::vector<double> z(m, 0.0);
  z[0] = 1.0;
  tql_first_components(d, e, z);

  // Map [-1,1] -> [0,1]; total mass becomes 1/(n - alpha).
  const double mass = 1.0 / (bw + 1.0);
  std::vector<std::pair<double, double>> nw(m);
  for (int i = 0; i < m; ++i)
    nw[i] = {0.5 * (1.0 + d[i]), mass * z[i] * z[i]};
  std::sort(nw.begin(), nw.end());

  QuadratureRule rule;
  rule.alpha = alpha;
  rule.kind = RuleKind::GaussJacobi;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    rule.nodes[i] = nw[i].first;
    rule.weights[i] = nw[i].second;
  }
  return rule;
}

double beta_from_uniform(double u, double a) { return std::pow(u, 1.0 / a); }

QuadratureRule sample_beta_nodes(int m, double a, std::uint64_t seed, std::uint64_t stream) {
  if (m < 1) throw std::invalid_argument("sample_beta_nodes: M must be positive");
  if (!(a > 0.0 && a <= 1.0))
    throw std::invalid_argument("sample_beta_nodes: first Beta parameter must be in (0,1]");

  RngStream rng(seed, "beta-nodes", stream);
  QuadratureRule rule;
  rule.alpha = a;
  rule.kind = RuleKind::MonteCarlo;
  rule.nodes.resize(m);
  for (int i = 0; i < m; ++i) rule.nodes[i] = beta_from_uniform(rng.uniform01(), a);
  std::sort(rule.nodes.begin(), rule.nodes.end());
  rule.weights.assign(m, 1.0 / m);
  return rule;
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  std::vector<double> x(n), w(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  return {x, w};
}

}  // namespace fpinn
