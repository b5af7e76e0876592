#include "mvnet/mlp.hpp"

#include <cmath>
#include <stdexcept>

namespace mvnet {

namespace {

constexpr int H1 = MlpDims::kH1;
constexpr int H2 = MlpDims::kH2;
constexpr int OUT = MlpDims::kOut;

// flat layout offsets
constexpr std::size_t kW1 = 0;
constexpr std::size_t kB1 = kW1 + H1;
constexpr std::size_t kW2 = kB1 + H1;
constexpr std::size_t kB2 = kW2 + static_cast<std::size_t>(H2) * H1;
constexpr std::size_t kW3 = kB2 + H2;
constexpr std::size_t kB3 = kW3 + static_cast<std::size_t>(OUT) * H2;
static_assert(kB3 + OUT == MlpDims::kCount);

struct Activations {
  double h1[H1];
  double h2[H2];
  double probs[OUT];
};

inline void forward(const double* p, double y, Activations& act) {
  for (int i = 0; i < H1; ++i) {
    double z = p[kW1 + i] * y + p[kB1 + i];
    act.h1[i] = 1.0 / (1.0 + std::exp(-z));
  }
  for (int i = 0; i < H2; ++i) {
    const double* w = p + kW2 + static_cast<std::size_t>(i) * H1;
    double z = p[kB2 + i];
    for (int k = 0; k < H1; ++k) z += w[k] * act.h1[k];
    act.h2[i] = z > 0.0 ? z : 0.0;
  }
  double logits[OUT];
  double maxz = -1e300;
  for (int i = 0; i < OUT; ++i) {
    const double* w = p + kW3 + static_cast<std::size_t>(i) * H2;
    double z = p[kB3 + i];
    for (int k = 0; k < H2; ++k) z += w[k] * act.h2[k];
    logits[i] = z;
    if (z > maxz) maxz = z;
  }
  double sum = 0.0;
  for (int i = 0; i < OUT; ++i) {
    logits[i] = std::exp(logits[i] - maxz);
    sum += logits[i];
  }
  for (int i = 0; i < OUT; ++i) act.probs[i] = logits[i] / sum;
}

}  // namespace

std::vector<double> mlp_random_init(Rng& rng) {
  std::vector<double> p(MlpDims::kCount);
  auto fill = [&rng, &p](std::size_t off, std::size_t n, int fan_in) {
    double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (std::size_t i = 0; i < n; ++i) p[off + i] = (2.0 * rng.uniform() - 1.0) * bound;
  };
  fill(kW1, H1 + H1, 1);
  fill(kW2, static_cast<std::size_t>(H2) * H1 + H2, H1);
  fill(kW3, static_cast<std::size_t>(OUT) * H2 + OUT, H2);
  return p;
}

void mlp_forward(std::span<const double> params, double y, std::span<double> probs) {
  if (params.size() != MlpDims::kCount) throw std::invalid_argument("mlp_forward: bad params");
  if (probs.size() != OUT) throw std::invalid_argument("mlp_forward: bad output span");
  if (!std::isfinite(y)) throw std::invalid_argument("mlp_forward: non-finite input");
  Activations act;
  forward(params.data(), y, act);
  for (int i = 0; i < OUT; ++i) probs[i] = act.probs[i];
}

double mlp_loss_grad(std::span<const double> params, const LabeledSamples& batch,
                     std::vector<double>* grad) {
  if (params.size() != MlpDims::kCount)
    throw std::invalid_argument("mlp_loss_grad: bad params");
  if (batch.inputs.empty() || batch.inputs.size() != batch.labels.size())
    throw std::invalid_argument("mlp_loss_grad: empty or mismatched batch");
  const double* p = params.data();
  double* g = nullptr;
  if (grad) {
    grad->assign(MlpDims::kCount, 0.0);
    g = grad->data();
  }

  double loss = 0.0;
  Activations act;
  double dlogits[OUT];
  double dh2[H2];
  double dh1[H1];
  for (std::size_t n = 0; n < batch.inputs.size(); ++n) {
    const double y = batch.inputs[n];
    const int label = batch.labels[n];
    if (label < 0 || label >= OUT) throw std::invalid_argument("mlp_loss_grad: label out of range");
    forward(p, y, act);
    double prob = act.probs[label];
    loss -= std::log(prob < 1e-30 ? 1e-30 : prob);
    if (!g) continue;

    for (int i = 0; i < OUT; ++i) dlogits[i] = act.probs[i];
    dlogits[label] -= 1.0;

    for (int k = 0; k < H2; ++k) dh2[k] = 0.0;
    for (int i = 0; i < OUT; ++i) {
      const double d = dlogits[i];
      const double* w = p + kW3 + static_cast<std::size_t>(i) * H2;
      double* gw = g + kW3 + static_cast<std::size_t>(i) * H2;
      for (int k = 0; k < H2; ++k) {
        gw[k] += d * act.h2[k];
        dh2[k] += d * w[k];
      }
      g[kB3 + i] += d;
    }

    for (int k = 0; k < H1; ++k) dh1[k] = 0.0;
    for (int i = 0; i < H2; ++i) {
      if (act.h2[i] <= 0.0) continue;  // ReLU gate
      const double d = dh2[i];
      const double* w = p + kW2 + static_cast<std::size_t>(i) * H1;
      double* gw = g + kW2 + static_cast<std::size_t>(i) * H1;
      for (int k = 0; k < H1; ++k) {
        gw[k] += d * act.h1[k];
        dh1[k] += d * w[k];
      }
      g[kB2 + i] += d;
    }

    for (int i = 0; i < H1; ++i) {
      const double d = dh1[i] * act.h1[i] * (1.0 - act.h1[i]);
      g[kW1 + i] += d * y;
      g[kB1 + i] += d;
    }
  }
  return loss;
}

std::vector<int> states_from_symbols(const std::vector<int>& symbols, int memory) {
  std::vector<int> states(symbols.size());
  int state = 0;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    int bit = symbols[i] < 0 ? 1 : 0;
    state = (state >> 1) | (bit << (memory - 1));
    states[i] = state;
  }
  return states;
}

}  // namespace mvnet
