#include "mvnet/models.hpp"

#include <stdexcept>

namespace mvnet {

double MlpModel::loss_grad(const std::vector<double>& at, const BufferEntry& entry,
                           std::vector<double>* grad) const {
  // drop the guard warm-up samples: their conditional differs from steady state
  constexpr int L = 4;
  std::vector<int> states = states_from_symbols(entry.symbols, L);
  LabeledSamples batch;
  batch.inputs.assign(entry.samples.begin() + (L - 1), entry.samples.end());
  batch.labels.assign(states.begin() + (L - 1), states.end());
  return mlp_loss_grad(at, batch, grad);
}

std::vector<int> MlpModel::detect(const ObservationBlock& observations) const {
  MlpProvider provider(params_);
  return viterbi_detect(observations.samples, provider, options_);
}

double LstmModel::loss_grad(const std::vector<double>& at, const BufferEntry& entry,
                            std::vector<double>* grad) const {
  WindowBatch batch = make_windows(entry.samples,
                                   states_from_symbols(entry.symbols, config_.window),
                                   config_.window);
  return lstm_loss_grad(config_, at, batch, grad);
}

std::vector<int> LstmModel::detect(const ObservationBlock& observations) const {
  const int L = config_.window;
  std::vector<int> detected(observations.samples.size());
  std::vector<double> window(L, 0.0);
  std::vector<double> probs(LstmConfig::kClasses);
  for (std::size_t i = 0; i < observations.samples.size(); ++i) {
    for (int t = 0; t < L; ++t) {
      std::ptrdiff_t src = static_cast<std::ptrdiff_t>(i) - (L - 1 - t);
      window[t] = src >= 0 ? observations.samples[src] : 0.0;
    }
    lstm_forward(config_, params_, window, probs);
    int best = 0;
    for (int c = 1; c < LstmConfig::kClasses; ++c)
      if (probs[c] > probs[best]) best = c;
    detected[i] = state_newest_symbol(best, L);
  }
  return detected;
}

double FullCsiModel::loss_grad(const std::vector<double>&, const BufferEntry&,
                               std::vector<double>*) const {
  throw std::logic_error("FullCsiModel has no trainable parameters");
}

std::vector<int> FullCsiModel::detect(const ObservationBlock& observations) const {
  GaussianProvider provider(schedule_.row(static_cast<std::size_t>(observations.block_index)),
                            noise_variance_);
  return viterbi_detect(observations.samples, provider, options_);
}

}  // namespace mvnet
