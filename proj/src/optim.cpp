#include "mvnet/optim.hpp"

#include <cmath>
#include <stdexcept>

namespace mvnet {

void sgd_step(std::vector<double>& params, const std::vector<double>& gradient, double lr) {
  if (params.size() != gradient.size()) throw std::invalid_argument("sgd_step: shape mismatch");
  if (lr < 0.0) throw std::invalid_argument("sgd_step: negative learning rate");
  for (std::size_t i = 0; i < params.size(); ++i) params[i] -= lr * gradient[i];
}

void AdamState::step(std::vector<double>& params, const std::vector<double>& gradient,
                     double lr) {
  if (params.size() != m_.size() || gradient.size() != m_.size())
    throw std::invalid_argument("AdamState::step: shape mismatch");
  ++t_;
  const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * gradient[i];
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * gradient[i] * gradient[i];
    params[i] -= lr * (m_[i] / bc1) / (std::sqrt(v_[i] / bc2) + eps_);
  }
}

}  // namespace mvnet
