#pragma once

#include <vector>

#include "mvnet/adapt.hpp"
#include "mvnet/lstm.hpp"
#include "mvnet/mlp.hpp"
#include "mvnet/taps.hpp"
#include "mvnet/trellis.hpp"

namespace mvnet {

// Learned-likelihood trellis equalizer.
class MlpModel : public EqualizerModel {
 public:
  explicit MlpModel(std::vector<double> params, ViterbiOptions options = {})
      : params_(std::move(params)), options_(options) {}
  std::vector<double>& params() override { return params_; }
  const std::vector<double>& params() const override { return params_; }
  double loss_grad(const std::vector<double>& at, const BufferEntry& entry,
                   std::vector<double>* grad) const override;
  std::vector<int> detect(const ObservationBlock& observations) const override;

 private:
  std::vector<double> params_;
  ViterbiOptions options_;
};

// Black-box benchmark: per-symbol argmax of the sliding-window classifier.
class LstmModel : public EqualizerModel {
 public:
  LstmModel(LstmConfig config, std::vector<double> params)
      : config_(config), params_(std::move(params)) {}
  const LstmConfig& config() const { return config_; }
  std::vector<double>& params() override { return params_; }
  const std::vector<double>& params() const override { return params_; }
  double loss_grad(const std::vector<double>& at, const BufferEntry& entry,
                   std::vector<double>* grad) const override;
  std::vector<int> detect(const ObservationBlock& observations) const override;

 private:
  LstmConfig config_;
  std::vector<double> params_;
};

// Genie lower bound: exact Gaussian likelihoods from the true taps and noise.
class FullCsiModel : public EqualizerModel {
 public:
  FullCsiModel(const TapSchedule& schedule, double noise_variance, ViterbiOptions options = {})
      : schedule_(schedule), noise_variance_(noise_variance), options_(options) {}
  bool trainable() const override { return false; }
  std::vector<double>& params() override { return empty_; }
  const std::vector<double>& params() const override { return empty_; }
  double loss_grad(const std::vector<double>&, const BufferEntry&,
                   std::vector<double>*) const override;
  std::vector<int> detect(const ObservationBlock& observations) const override;

 private:
  const TapSchedule& schedule_;
  double noise_variance_;
  ViterbiOptions options_;
  std::vector<double> empty_;
};

}  // namespace mvnet
