#pragma once

#include <span>
#include <vector>

namespace mvnet {

// Trellis state over BPSK: the L-symbol history [s_{i-L+1}, ..., s_i].
// Bit k of the state index is 1 iff the symbol at relative position k
// (0 = oldest) is -1. The newest symbol lives in bit L-1.
inline int state_symbol(int state, int rel_pos) {
  return (state >> rel_pos) & 1 ? -1 : +1;
}

inline int state_newest_symbol(int state, int memory) {
  return state_symbol(state, memory - 1);
}

// Per-state likelihood estimates proportional to P(y | state).
class LikelihoodProvider {
 public:
  virtual ~LikelihoodProvider() = default;
  virtual int memory() const = 0;
  // out.size() == 2^memory, strictly positive and finite
  virtual void evaluate(double y, std::span<double> out) const = 0;
  // Warm-up samples: only the `valid` newest symbols of the state lie inside
  // the block; older positions are the zero guard interval. Providers that can
  // model the guard exactly override this; the default falls back to the
  // stationary likelihood.
  virtual void evaluate_warmup(double y, int /*valid*/, std::span<double> out) const {
    evaluate(y, out);
  }
};

// Exact-CSI provider: N(y; h^T s_bar, sigma^2).
class GaussianProvider : public LikelihoodProvider {
 public:
  GaussianProvider(std::vector<double> taps, double noise_variance);
  int memory() const override { return static_cast<int>(taps_.size()); }
  void evaluate(double y, std::span<double> out) const override;
  void evaluate_warmup(double y, int valid, std::span<double> out) const override;

 private:
  std::vector<double> taps_;
  double noise_variance_;
};

struct ViterbiOptions {
  // Start from the guard state (all previous symbols outside the block);
  // if false, all states start with zero cost.
  bool guard_start = true;
};

// Minimizes sum_i -log P(y_i | s_bar_i) over state paths; O(B * 2^(L+1)).
std::vector<int> viterbi_detect(const std::vector<double>& observations,
                                const LikelihoodProvider& provider,
                                ViterbiOptions options = {});

// Exhaustive argmax over all 2^B symbol sequences; test oracle, B <= 16.
std::vector<int> brute_force_ml(const std::vector<double>& observations,
                                const LikelihoodProvider& provider);

// Fraction of mismatched positions.
double ber(std::span<const int> truth, std::span<const int> estimate);

}  // namespace mvnet
