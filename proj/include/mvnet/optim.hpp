#pragma once

#include <cstdint>
#include <vector>

namespace mvnet {

// params <- params - lr * gradient
void sgd_step(std::vector<double>& params, const std::vector<double>& gradient, double lr);

// Bias-corrected adaptive-moment update.
class AdamState {
 public:
  explicit AdamState(std::size_t count, double beta1 = 0.9, double beta2 = 0.999,
                     double eps = 1e-8)
      : m_(count, 0.0), v_(count, 0.0), beta1_(beta1), beta2_(beta2), eps_(eps) {}

  void step(std::vector<double>& params, const std::vector<double>& gradient, double lr);

 private:
  std::vector<double> m_, v_;
  double beta1_, beta2_, eps_;
  std::int64_t t_ = 0;
};

}  // namespace mvnet
