#pragma once

#include <array>
#include <span>
#include <vector>

#include "mvnet/rng.hpp"
#include "mvnet/trellis.hpp"

namespace mvnet {

// One channel-output sample per input; label = trellis state index.
struct LabeledSamples {
  std::vector<double> inputs;
  std::vector<int> labels;
};

// Dense classifier 1 -> 100 (sigmoid) -> 50 (ReLU) -> 16 (softmax), used as the
// learned per-state likelihood of the trellis equalizer. Parameters live in a
// single flat vector: W1, b1, W2, b2, W3, b3.
struct MlpDims {
  static constexpr int kIn = 1;
  static constexpr int kH1 = 100;
  static constexpr int kH2 = 50;
  static constexpr int kOut = 16;
  static constexpr std::size_t kCount =
      kH1 * kIn + kH1 + kH2 * kH1 + kH2 + kOut * kH2 + kOut;  // 6066
};

// uniform(-1/sqrt(fan_in), +1/sqrt(fan_in)) per layer
std::vector<double> mlp_random_init(Rng& rng);

void mlp_forward(std::span<const double> params, double y, std::span<double> probs);

// Summed cross entropy over the batch; analytic gradient by reverse-mode
// accumulation. grad may be null when only the loss is needed.
double mlp_loss_grad(std::span<const double> params, const LabeledSamples& batch,
                     std::vector<double>* grad);

// Softmax posteriors feed the trellis directly: under a uniform symbol prior
// the posterior is proportional to the likelihood up to a state-independent
// factor, which the path-cost argmin ignores.
class MlpProvider : public LikelihoodProvider {
 public:
  explicit MlpProvider(std::span<const double> params) : params_(params) {}
  int memory() const override { return 4; }
  void evaluate(double y, std::span<double> out) const override {
    mlp_forward(params_, y, out);
  }
  // The classifier is trained on steady-state samples only; during the guard
  // warm-up its input distribution does not apply, so the first L-1 samples
  // contribute no cost and those symbols are resolved through later steps.
  void evaluate_warmup(double y, int valid, std::span<double> out) const override {
    if (valid >= memory()) {
      evaluate(y, out);
      return;
    }
    for (auto& v : out) v = 1.0 / static_cast<double>(out.size());
  }

 private:
  std::span<const double> params_;
};

// Label for sample i is the state of the last L symbols, +1-padded before the
// block start (the trellis encoding cannot express the zero guard).
std::vector<int> states_from_symbols(const std::vector<int>& symbols, int memory);

}  // namespace mvnet
