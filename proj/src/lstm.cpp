#include "mvnet/lstm.hpp"

#include <cmath>
#include <stdexcept>

namespace mvnet {

namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

struct Layout {
  int H;
  std::size_t wx1, wh1, b1;  // layer 1 (input dim 1)
  std::size_t wx2, wh2, b2;  // layer 2 (input dim H)
  std::size_t wy, by;
  std::size_t count;

  explicit Layout(const LstmConfig& cfg) : H(cfg.hidden) {
    std::size_t off = 0;
    auto take = [&off](std::size_t n) { std::size_t o = off; off += n; return o; };
    const std::size_t H4 = 4ull * H;
    wx1 = take(H4 * 1);
    wh1 = take(H4 * H);
    b1 = take(H4);
    wx2 = take(H4 * H);
    wh2 = take(H4 * H);
    b2 = take(H4);
    wy = take(static_cast<std::size_t>(LstmConfig::kClasses) * H);
    by = take(LstmConfig::kClasses);
    count = off;
  }
};

// per-timestep cache for one layer
struct StepCache {
  std::vector<double> gi, gf, gg, go;  // post-activation gates
  std::vector<double> c, h, tanh_c;
  std::vector<double> x;  // layer input at this step

  explicit StepCache(int H, int in_dim)
      : gi(H), gf(H), gg(H), go(H), c(H), h(H), tanh_c(H), x(in_dim) {}
};

void layer_step(const double* wx, const double* wh, const double* b, int in_dim, int H,
                const double* x, const double* h_prev, const double* c_prev, StepCache& cache) {
  for (int j = 0; j < in_dim; ++j) cache.x[j] = x[j];
  for (int gate = 0; gate < 4; ++gate) {
    for (int u = 0; u < H; ++u) {
      const int row = gate * H + u;
      double z = b[row];
      const double* wxr = wx + static_cast<std::size_t>(row) * in_dim;
      for (int j = 0; j < in_dim; ++j) z += wxr[j] * x[j];
      const double* whr = wh + static_cast<std::size_t>(row) * H;
      for (int j = 0; j < H; ++j) z += whr[j] * h_prev[j];
      switch (gate) {
        case 0: cache.gi[u] = sigmoid(z); break;
        case 1: cache.gf[u] = sigmoid(z); break;
        case 2: cache.gg[u] = std::tanh(z); break;
        case 3: cache.go[u] = sigmoid(z); break;
      }
    }
  }
  for (int u = 0; u < H; ++u) {
    cache.c[u] = cache.gf[u] * c_prev[u] + cache.gi[u] * cache.gg[u];
    cache.tanh_c[u] = std::tanh(cache.c[u]);
    cache.h[u] = cache.go[u] * cache.tanh_c[u];
  }
}

// Accumulates gradients for one layer over the whole window, given dh/dc
// flowing in from above and from the next timestep.
struct LayerBackward {
  int in_dim, H;
  const double* wx;
  const double* wh;
  double* gwx;
  double* gwh;
  double* gb;

  // dh_in/dc_in: gradients w.r.t. this step's h and c (already combined);
  // outputs: dx (may be null), dh_prev, dc_prev
  void step(const StepCache& cache, const double* h_prev, const double* c_prev,
            const double* dh_in, const double* dc_in, double* dx, double* dh_prev,
            double* dc_prev) const {
    std::vector<double> dz(4ull * H);
    for (int u = 0; u < H; ++u) {
      double dc = dc_in[u] + dh_in[u] * cache.go[u] * (1.0 - cache.tanh_c[u] * cache.tanh_c[u]);
      double d_go = dh_in[u] * cache.tanh_c[u];
      double d_gi = dc * cache.gg[u];
      double d_gf = dc * c_prev[u];
      double d_gg = dc * cache.gi[u];
      dz[0 * H + u] = d_gi * cache.gi[u] * (1.0 - cache.gi[u]);
      dz[1 * H + u] = d_gf * cache.gf[u] * (1.0 - cache.gf[u]);
      dz[2 * H + u] = d_gg * (1.0 - cache.gg[u] * cache.gg[u]);
      dz[3 * H + u] = d_go * cache.go[u] * (1.0 - cache.go[u]);
      dc_prev[u] = dc * cache.gf[u];
    }
    if (dx)
      for (int j = 0; j < in_dim; ++j) dx[j] = 0.0;
    for (int j = 0; j < H; ++j) dh_prev[j] = 0.0;
    for (int row = 0; row < 4 * H; ++row) {
      const double d = dz[row];
      if (d == 0.0) continue;
      gb[row] += d;
      double* gwxr = gwx + static_cast<std::size_t>(row) * in_dim;
      const double* wxr = wx + static_cast<std::size_t>(row) * in_dim;
      for (int j = 0; j < in_dim; ++j) {
        gwxr[j] += d * cache.x[j];
        if (dx) dx[j] += d * wxr[j];
      }
      double* gwhr = gwh + static_cast<std::size_t>(row) * H;
      const double* whr = wh + static_cast<std::size_t>(row) * H;
      for (int j = 0; j < H; ++j) {
        gwhr[j] += d * h_prev[j];
        dh_prev[j] += d * whr[j];
      }
    }
  }
};

}  // namespace

std::size_t LstmConfig::param_count() const { return Layout(*this).count; }

std::vector<double> lstm_random_init(const LstmConfig& cfg, Rng& rng) {
  Layout lay(cfg);
  std::vector<double> p(lay.count);
  auto fill = [&rng, &p](std::size_t off, std::size_t n, int fan_in) {
    double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (std::size_t i = 0; i < n; ++i) p[off + i] = (2.0 * rng.uniform() - 1.0) * bound;
  };
  const int H = cfg.hidden;
  fill(lay.wx1, 4ull * H, 1 + H);
  fill(lay.wh1, 4ull * H * H, 1 + H);
  fill(lay.b1, 4ull * H, 1 + H);
  fill(lay.wx2, 4ull * H * H, 2 * H);
  fill(lay.wh2, 4ull * H * H, 2 * H);
  fill(lay.b2, 4ull * H, 2 * H);
  fill(lay.wy, static_cast<std::size_t>(LstmConfig::kClasses) * H + LstmConfig::kClasses, H);
  return p;
}

namespace {

// Runs the full forward pass; caches are per (timestep, layer).
void forward_window(const LstmConfig& cfg, const Layout& lay, const double* p,
                    std::span<const double> window, std::vector<StepCache>& l1,
                    std::vector<StepCache>& l2, double* probs) {
  const int H = cfg.hidden;
  const int T = cfg.window;
  std::vector<double> zero(H, 0.0);
  for (int t = 0; t < T; ++t) {
    const double* h1p = t ? l1[t - 1].h.data() : zero.data();
    const double* c1p = t ? l1[t - 1].c.data() : zero.data();
    layer_step(p + lay.wx1, p + lay.wh1, p + lay.b1, 1, H, &window[t], h1p, c1p, l1[t]);
    const double* h2p = t ? l2[t - 1].h.data() : zero.data();
    const double* c2p = t ? l2[t - 1].c.data() : zero.data();
    layer_step(p + lay.wx2, p + lay.wh2, p + lay.b2, H, H, l1[t].h.data(), h2p, c2p, l2[t]);
  }
  double logits[LstmConfig::kClasses];
  double maxz = -1e300;
  const double* hT = l2[T - 1].h.data();
  for (int i = 0; i < LstmConfig::kClasses; ++i) {
    const double* w = p + lay.wy + static_cast<std::size_t>(i) * H;
    double z = p[lay.by + i];
    for (int k = 0; k < H; ++k) z += w[k] * hT[k];
    logits[i] = z;
    if (z > maxz) maxz = z;
  }
  double sum = 0.0;
  for (int i = 0; i < LstmConfig::kClasses; ++i) {
    logits[i] = std::exp(logits[i] - maxz);
    sum += logits[i];
  }
  for (int i = 0; i < LstmConfig::kClasses; ++i) probs[i] = logits[i] / sum;
}

}  // namespace

void lstm_forward(const LstmConfig& cfg, std::span<const double> params,
                  std::span<const double> window, std::span<double> probs) {
  Layout lay(cfg);
  if (params.size() != lay.count) throw std::invalid_argument("lstm_forward: bad params");
  if (static_cast<int>(window.size()) != cfg.window)
    throw std::invalid_argument("lstm_forward: window length mismatch");
  if (probs.size() != LstmConfig::kClasses)
    throw std::invalid_argument("lstm_forward: bad output span");
  std::vector<StepCache> l1(cfg.window, StepCache(cfg.hidden, 1));
  std::vector<StepCache> l2(cfg.window, StepCache(cfg.hidden, cfg.hidden));
  forward_window(cfg, lay, params.data(), window, l1, l2, probs.data());
}

WindowBatch make_windows(const std::vector<double>& samples, const std::vector<int>& labels,
                         int window) {
  if (samples.size() != labels.size())
    throw std::invalid_argument("make_windows: length mismatch");
  WindowBatch batch;
  batch.labels = labels;
  batch.windows.resize(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    auto& w = batch.windows[i];
    w.assign(window, 0.0);
    for (int t = 0; t < window; ++t) {
      std::ptrdiff_t src = static_cast<std::ptrdiff_t>(i) - (window - 1 - t);
      if (src >= 0) w[t] = samples[src];
    }
  }
  return batch;
}

double lstm_loss_grad(const LstmConfig& cfg, std::span<const double> params,
                      const WindowBatch& batch, std::vector<double>* grad) {
  Layout lay(cfg);
  if (params.size() != lay.count) throw std::invalid_argument("lstm_loss_grad: bad params");
  if (batch.windows.empty() || batch.windows.size() != batch.labels.size())
    throw std::invalid_argument("lstm_loss_grad: empty or mismatched batch");
  const int H = cfg.hidden;
  const int T = cfg.window;
  const double* p = params.data();
  double* g = nullptr;
  if (grad) {
    grad->assign(lay.count, 0.0);
    g = grad->data();
  }

  std::vector<StepCache> l1(T, StepCache(H, 1));
  std::vector<StepCache> l2(T, StepCache(H, H));
  std::vector<double> zero(H, 0.0);
  std::vector<double> probs(LstmConfig::kClasses);
  std::vector<double> dh1(H), dc1(H), dh2(H), dc2(H), dh1_prev(H), dc1_prev(H), dh2_prev(H),
      dc2_prev(H), dx2(H);
  double loss = 0.0;

  for (std::size_t n = 0; n < batch.windows.size(); ++n) {
    const auto& window = batch.windows[n];
    const int label = batch.labels[n];
    if (label < 0 || label >= LstmConfig::kClasses)
      throw std::invalid_argument("lstm_loss_grad: label out of range");
    if (static_cast<int>(window.size()) != T)
      throw std::invalid_argument("lstm_loss_grad: window length mismatch");
    forward_window(cfg, lay, p, window, l1, l2, probs.data());
    double prob = probs[label];
    loss -= std::log(prob < 1e-30 ? 1e-30 : prob);
    if (!g) continue;

    // head
    std::fill(dh2.begin(), dh2.end(), 0.0);
    const double* hT = l2[T - 1].h.data();
    for (int i = 0; i < LstmConfig::kClasses; ++i) {
      double d = probs[i] - (i == label ? 1.0 : 0.0);
      g[lay.by + i] += d;
      double* gw = g + lay.wy + static_cast<std::size_t>(i) * H;
      const double* w = p + lay.wy + static_cast<std::size_t>(i) * H;
      for (int k = 0; k < H; ++k) {
        gw[k] += d * hT[k];
        dh2[k] += d * w[k];
      }
    }
    std::fill(dc2.begin(), dc2.end(), 0.0);
    std::fill(dh1.begin(), dh1.end(), 0.0);
    std::fill(dc1.begin(), dc1.end(), 0.0);

    LayerBackward back1{1, H, p + lay.wx1, p + lay.wh1, g + lay.wx1, g + lay.wh1, g + lay.b1};
    LayerBackward back2{H, H, p + lay.wx2, p + lay.wh2, g + lay.wx2, g + lay.wh2, g + lay.b2};

    for (int t = T - 1; t >= 0; --t) {
      const double* h2p = t ? l2[t - 1].h.data() : zero.data();
      const double* c2p = t ? l2[t - 1].c.data() : zero.data();
      back2.step(l2[t], h2p, c2p, dh2.data(), dc2.data(), dx2.data(), dh2_prev.data(),
                 dc2_prev.data());
      for (int k = 0; k < H; ++k) dh1[k] += dx2[k];  // layer-2 input is layer-1 h

      const double* h1p = t ? l1[t - 1].h.data() : zero.data();
      const double* c1p = t ? l1[t - 1].c.data() : zero.data();
      back1.step(l1[t], h1p, c1p, dh1.data(), dc1.data(), nullptr, dh1_prev.data(),
                 dc1_prev.data());

      dh2.swap(dh2_prev);
      dc2.swap(dc2_prev);
      dh1.swap(dh1_prev);
      dc1.swap(dc1_prev);
    }
  }
  return loss;
}

}  // namespace mvnet
