#pragma once

#include <span>
#include <vector>

#include "mvnet/mlp.hpp"
#include "mvnet/rng.hpp"

namespace mvnet {

// Sliding-window recurrent classifier: a window of L consecutive channel
// outputs is fed sample-by-sample through two stacked LSTM layers, and a dense
// head over the final hidden state produces 16 state probabilities.
struct LstmConfig {
  int window = 4;
  int hidden = 64;  // larger sizes (e.g. 256) available via config
  static constexpr int kClasses = 16;

  std::size_t param_count() const;
};

// Flat layout: per layer Wx(4H x in), Wh(4H x H), b(4H); then Wy(16 x H), by(16).
// Gate order inside the 4H rows: input, forget, candidate, output.
std::vector<double> lstm_random_init(const LstmConfig& cfg, Rng& rng);

void lstm_forward(const LstmConfig& cfg, std::span<const double> params,
                  std::span<const double> window, std::span<double> probs);

struct WindowBatch {
  std::vector<std::vector<double>> windows;
  std::vector<int> labels;
};

// Windows [y_{i-L+1}, ..., y_i] per sample, zero-padded before the block start.
WindowBatch make_windows(const std::vector<double>& samples, const std::vector<int>& labels,
                         int window);

// Summed cross entropy with truncated reverse accumulation over the window.
double lstm_loss_grad(const LstmConfig& cfg, std::span<const double> params,
                      const WindowBatch& batch, std::vector<double>* grad);

}  // namespace mvnet
