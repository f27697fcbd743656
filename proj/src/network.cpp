#include "fpinn/network.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fpinn/rng.hpp"

namespace fpinn {

std::size_t param_count(const std::vector<int>& widths) {
  std::size_t n = 0;
  for (std::size_t l = 0; l + 1 < widths.size(); ++l)
    n += static_cast<std::size_t>(widths[l]) * widths[l + 1] + widths[l + 1];
  return n;
}

NetworkParams init_network(const std::vector<int>& widths, std::uint64_t seed) {
  if (widths.size() < 2 || widths.front() != 2 || widths.back() != 1)
    throw std::invalid_argument("init_network: widths must run from 2 inputs to 1 output");
  for (int w : widths)
    if (w < 1) throw std::invalid_argument("init_network: nonpositive layer width");

  NetworkParams net;
  net.widths = widths;
  net.init_seed = seed;
  net.params.assign(param_count(widths), 0.0);

  RngStream rng(seed, "glorot-init");
  std::size_t off = 0;
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    const int fan_in = widths[l], fan_out = widths[l + 1];
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    for (int i = 0; i < fan_in * fan_out; ++i)
      net.params[off + i] = limit * (2.0 * rng.uniform01() - 1.0);
    off += static_cast<std::size_t>(fan_in) * fan_out + fan_out;  // biases stay zero
  }
  return net;
}

NetworkEval::NetworkEval(const NetworkParams& net) : widths_(net.widths) {
  if (widths_.size() < 2) throw std::invalid_argument("NetworkEval: missing layers");
  n_params_ = param_count(widths_);
  if (net.params.size() != n_params_)
    throw std::invalid_argument("NetworkEval: parameter vector length mismatch");
  std::size_t off = 0;
  for (std::size_t l = 0; l + 1 < widths_.size(); ++l) {
    w_off_.push_back(off);
    off += static_cast<std::size_t>(widths_[l]) * widths_[l + 1];
    b_off_.push_back(off);
    off += widths_[l + 1];
  }
  max_width_ = 0;
  for (int w : widths_) max_width_ = std::max(max_width_, w);
  if (max_width_ > 64) throw std::invalid_argument("NetworkEval: layer width above 64");
  if (widths_.size() > 17) throw std::invalid_argument("NetworkEval: more than 16 layers");
  tape_stride_ = 0;
  for (std::size_t l = 0; l + 2 < widths_.size(); ++l)
    tape_stride_ += static_cast<std::size_t>(5) * widths_[l + 1];  // 4 jet slots + tanh value
}

std::size_t NetworkEval::workspace_doubles() const {
  return tape_stride_ + static_cast<std::size_t>(5) * max_width_ * 4 + 16;
}

namespace {
inline void ensure(std::vector<double>& buf, std::size_t n) {
  if (buf.size() < n) buf.resize(n);
}
}  // namespace

// Forward pass with K jet slots per neuron. Hidden-layer pre-activation jets
// and tanh values are stored in `tape` ((K+1) doubles per hidden neuron) for
// the reverse pass; `tape` may be null for evaluation-only calls.
template <int K>
double NetworkEval::forward_impl(const double* params, const double* in_jets, double* tape,
                                 double* out_jet) const {
  const std::size_t L = widths_.size() - 1;
  double bufa[64 * K], bufb[64 * K];  // max_width capped by construction checks
  const double* cur = in_jets;
  double* nxt = bufa;
  double* tp = tape;

  for (std::size_t l = 0; l < L; ++l) {
    const int win = widths_[l], wout = widths_[l + 1];
    const double* W = params + w_off_[l];
    const double* b = params + b_off_[l];
    const bool hidden = (l + 1 < L);
    for (int i = 0; i < wout; ++i) {
      double z[K];
      for (int k = 0; k < K; ++k) z[k] = 0.0;
      const double* Wi = W + static_cast<std::size_t>(i) * win;
      for (int j = 0; j < win; ++j) {
        const double w = Wi[j];
        const double* aj = cur + static_cast<std::size_t>(j) * K;
        for (int k = 0; k < K; ++k) z[k] += w * aj[k];
      }
      z[0] += b[i];
      if (hidden) {
        const double v = std::tanh(z[0]);
        const double p = 1.0 - v * v;
        double* out = nxt + static_cast<std::size_t>(i) * K;
        out[0] = v;
        if constexpr (K >= 2) out[1] = p * z[1];
        if constexpr (K >= 4) {
          out[2] = p * z[2];
          out[3] = p * z[3] - v * p * z[2] * z[2];
        }
        if (tp) {
          double* rec = tp + static_cast<std::size_t>(i) * (K + 1);
          for (int k = 0; k < K; ++k) rec[k] = z[k];
          rec[K] = v;
        }
      } else {
        for (int k = 0; k < K; ++k) out_jet[k] = z[k];
      }
    }
    if (hidden) {
      if (tp) tp += static_cast<std::size_t>(wout) * (K + 1);
      cur = nxt;
      nxt = (nxt == bufa) ? bufb : bufa;
    }
  }
  return out_jet[0];
}

// Reverse accumulation over the forward jet computation. out_adjoint seeds
// the output jet slots; gradients are added into grad.
template <int K>
void NetworkEval::reverse_impl(const double* params, const double* in_jets, const double* tape,
                               const double* out_adjoint, double* grad) const {
  const std::size_t L = widths_.size() - 1;
  double zbar_buf[64 * K], abar_buf[64 * K], aprev_buf[64 * K];

  // tape offsets per hidden layer
  std::size_t tape_off[16];
  std::size_t acc = 0;
  for (std::size_t l = 0; l + 1 < L; ++l) {
    tape_off[l] = acc;
    acc += static_cast<std::size_t>(widths_[l + 1]) * (K + 1);
  }

  double* zbar = zbar_buf;
  for (int k = 0; k < K; ++k) zbar[k] = out_adjoint[k];  // output width is 1

  for (std::size_t li = L; li-- > 0;) {
    const int win = widths_[li], wout = widths_[li + 1];
    const double* W = params + w_off_[li];
    double* Wg = grad + w_off_[li];
    double* bg = grad + b_off_[li];

    // previous activations: input jets at layer 0, else tanh jets from tape
    const double* aprev;
    if (li == 0) {
      aprev = in_jets;
    } else {
      const double* rec0 = tape + tape_off[li - 1];
      for (int j = 0; j < win; ++j) {
        const double* rec = rec0 + static_cast<std::size_t>(j) * (K + 1);
        const double v = rec[K];
        const double p = 1.0 - v * v;
        double* aj = aprev_buf + static_cast<std::size_t>(j) * K;
        aj[0] = v;
        if constexpr (K >= 2) aj[1] = p * rec[1];
        if constexpr (K >= 4) {
          aj[2] = p * rec[2];
          aj[3] = p * rec[3] - v * p * rec[2] * rec[2];
        }
      }
      aprev = aprev_buf;
    }

    for (int i = 0; i < wout; ++i) {
      const double* zi = zbar + static_cast<std::size_t>(i) * K;
      double* Wgi = Wg + static_cast<std::size_t>(i) * win;
      for (int j = 0; j < win; ++j) {
        const double* aj = aprev + static_cast<std::size_t>(j) * K;
        double s = 0.0;
        for (int k = 0; k < K; ++k) s += zi[k] * aj[k];
        Wgi[j] += s;
      }
      bg[i] += zi[0];
    }

    if (li == 0) break;

    // abar_prev = W^T zbar, slotwise
    for (int j = 0; j < win; ++j)
      for (int k = 0; k < K; ++k) abar_buf[static_cast<std::size_t>(j) * K + k] = 0.0;
    for (int i = 0; i < wout; ++i) {
      const double* Wi = W + static_cast<std::size_t>(i) * win;
      const double* zi = zbar + static_cast<std::size_t>(i) * K;
      for (int j = 0; j < win; ++j) {
        double* aj = abar_buf + static_cast<std::size_t>(j) * K;
        const double w = Wi[j];
        for (int k = 0; k < K; ++k) aj[k] += w * zi[k];
      }
    }

    // pull adjoints through tanh of layer li-1
    const double* rec0 = tape + tape_off[li - 1];
    for (int j = 0; j < win; ++j) {
      const double* rec = rec0 + static_cast<std::size_t>(j) * (K + 1);
      const double* ab = abar_buf + static_cast<std::size_t>(j) * K;
      double* zb = zbar_buf + static_cast<std::size_t>(j) * K;
      const double v = rec[K];
      const double p = 1.0 - v * v;
      const double pp = -2.0 * v * p;
      double z0 = ab[0] * p;
      if constexpr (K >= 2) z0 += ab[1] * pp * rec[1];
      if constexpr (K >= 4) {
        const double ppp = -2.0 * p * (1.0 - 3.0 * v * v);
        z0 += ab[2] * pp * rec[2] + ab[3] * (pp * rec[3] + 0.5 * ppp * rec[2] * rec[2]);
        zb[3] = ab[3] * p;
        zb[2] = ab[2] * p + ab[3] * pp * rec[2];
      }
      if constexpr (K >= 2) zb[1] = ab[1] * p;
      zb[0] = z0;
    }
    zbar = zbar_buf;
  }
}

double NetworkEval::value(const double* params, double t, double x, Workspace& ws) const {
  (void)ws;
  const double in[2] = {t, x};
  double out;
  forward_impl<1>(params, in, nullptr, &out);
  return out;
}

void NetworkEval::value_and_dt(const double* params, double t, double x, Workspace& ws, double& u,
                               double& u_t) const {
  (void)ws;
  const double in[4] = {t, 1.0, x, 0.0};
  double out[2];
  forward_impl<2>(params, in, nullptr, out);
  u = out[0];
  u_t = out[1];
}

PointJets NetworkEval::jets(const double* params, double t, double x, Workspace& ws) const {
  (void)ws;
  const double in[8] = {t, 1.0, 0.0, 0.0, x, 0.0, 1.0, 0.0};
  double out[4];
  forward_impl<4>(params, in, nullptr, out);
  return {out[0], out[1], out[2], 2.0 * out[3]};
}

template <int K>
double NetworkEval::run_seeded(const double* params, double t, double x, const QuerySeeds& seeds,
                               Workspace& ws, std::span<double> grad) const {
  ensure(ws.buf, tape_stride_);
  double in[8] = {0};
  double adj[4] = {0};
  if constexpr (K == 1) {
    in[0] = t;
    in[1] = x;
    adj[0] = seeds.wu;
  } else if constexpr (K == 2) {
    in[0] = t;
    in[1] = 1.0;
    in[2] = x;
    in[3] = 0.0;
    adj[0] = seeds.wu;
    adj[1] = seeds.wut;
  } else {
    in[0] = t;
    in[1] = 1.0;
    in[4] = x;
    in[6] = 1.0;
    adj[0] = seeds.wu;
    adj[1] = seeds.wut;
    adj[2] = seeds.wux;
    adj[3] = 2.0 * seeds.wuxx;  // slot 3 carries u_xx/2
  }
  double out[K];
  forward_impl<K>(params, in, ws.buf.data(), out);
  reverse_impl<K>(params, in, ws.buf.data(), adj, grad.data());
  return out[0];
}

double NetworkEval::seeded_gradient(const double* params, double t, double x,
                                    const QuerySeeds& seeds, Workspace& ws,
                                    std::span<double> grad) const {
  if (seeds.wux != 0.0 || seeds.wuxx != 0.0)
    return run_seeded<4>(params, t, x, seeds, ws, grad);
  if (seeds.wut != 0.0) return run_seeded<2>(params, t, x, seeds, ws, grad);
  return run_seeded<1>(params, t, x, seeds, ws, grad);
}

// --- checkpoint io ---

void save_checkpoint(const std::string& path, const NetworkParams& net, long iteration) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_checkpoint: cannot open " + path);
  out << "fpinn-checkpoint v1\n";
  out << "widths";
  for (int w : net.widths) out << ' ' << w;
  out << "\nactivation tanh\n";
  out << "seed " << net.init_seed << "\n";
  out << "iteration " << iteration << "\n";
  out << "params " << net.params.size() << "\n";
  char buf[40];
  for (double p : net.params) {
    std::snprintf(buf, sizeof(buf), "%a", p);
    out << buf << '\n';
  }
  if (!out) throw std::runtime_error("save_checkpoint: write failed for " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_checkpoint: cannot open " + path);
  std::string line;
  std::getline(in, line);
  if (line != "fpinn-checkpoint v1")
    throw std::runtime_error("load_checkpoint: unrecognized header in " + path);

  Checkpoint ck;
  std::string key;
  in >> key;
  if (key != "widths") throw std::runtime_error("load_checkpoint: expected widths");
  std::getline(in, line);
  std::istringstream ws(line);
  int w;
  while (ws >> w) ck.net.widths.push_back(w);

  std::string activation;
  in >> key >> activation;
  if (key != "activation" || activation != "tanh")
    throw std::runtime_error("load_checkpoint: unsupported activation");
  in >> key >> ck.net.init_seed;
  if (key != "seed") throw std::runtime_error("load_checkpoint: expected seed");
  in >> key >> ck.iteration;
  if (key != "iteration") throw std::runtime_error("load_checkpoint: expected iteration");
  std::size_t n;
  in >> key >> n;
  if (key != "params") throw std::runtime_error("load_checkpoint: expected params");
  if (n != param_count(ck.net.widths))
    throw std::runtime_error("load_checkpoint: parameter count does not match widths");

  ck.net.params.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string tok;
    if (!(in >> tok)) throw std::runtime_error("load_checkpoint: truncated parameter array");
    ck.net.params[i] = std::strtod(tok.c_str(), nullptr);
  }
  return ck;
}

// --- Adam ---

AdamOptimizer::AdamOptimizer(std::size_t n, double lr, double beta1, double beta2, double eps)
    : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps), m_(n, 0.0), v_(n, 0.0) {}

void AdamOptimizer::step(std::span<double> params, std::span<const double> grad) {
  if (params.size() != m_.size() || grad.size() != m_.size())
    throw std::invalid_argument("AdamOptimizer: size mismatch");
  ++t_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (std::size_t i = 0; i < m_.size(); ++i) {
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * grad[i];
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * grad[i] * grad[i];
    const double mhat = m_[i] / c1;
    const double vhat = v_[i] / c2;
    params[i] -= lr_ * mhat / (std::sqrt(vhat) + eps_);
  }
}

}  // namespace fpinn
