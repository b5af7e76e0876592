#include "mvnet/adapt.hpp"

#include <stdexcept>

#include "mvnet/optim.hpp"

namespace mvnet {

AdaptationBuffer::AdaptationBuffer(int capacity) : capacity_(capacity) {
  if (capacity < 1) throw std::invalid_argument("AdaptationBuffer: capacity must be >= 1");
}

void AdaptationBuffer::insert(BufferEntry entry) {
  if (!entries_.empty() && entry.block_index <= entries_.back().block_index)
    throw std::invalid_argument("AdaptationBuffer: block_index must be strictly increasing");
  entries_.push_back(std::move(entry));
  if (entries_.size() > static_cast<std::size_t>(capacity_)) entries_.pop_front();
}

std::optional<MetaPair> select_meta_pair(const AdaptationBuffer& buffer, int window, Rng& rng) {
  std::vector<std::size_t> eligible;  // query positions
  for (std::size_t k = 1; k < buffer.size(); ++k) {
    int gap = buffer.entry(k).block_index - buffer.entry(k - 1).block_index;
    if (gap <= window) eligible.push_back(k);
  }
  if (eligible.empty()) return std::nullopt;
  std::size_t k = eligible[rng.uniform_int(eligible.size())];
  return MetaPair{&buffer.entry(k - 1), &buffer.entry(k)};
}

OnlineAdapter::OnlineAdapter(EqualizerModel& model, AdaptConfig config, DecodeRemodulate codec,
                             std::uint64_t seed)
    : model_(model),
      config_(config),
      codec_(std::move(codec)),
      buffer_(config.buffer_capacity),
      rng_(seed) {
  if (config_.eta < 0.0 || config_.kappa < 0.0)
    throw std::invalid_argument("OnlineAdapter: learning rates must be non-negative");
  if (config_.meta_period < 1 || config_.window < 1)
    throw std::invalid_argument("OnlineAdapter: meta_period and window must be >= 1");
  if (model_.trainable()) theta_ = model_.params();
}

void OnlineAdapter::set_theta(std::vector<double> theta) {
  if (theta.size() != model_.params().size())
    throw std::invalid_argument("OnlineAdapter::set_theta: shape mismatch");
  theta_ = std::move(theta);
}

namespace {

// The block loss is a sum over samples; learning rates are specified on the
// per-sample (mean) scale, so gradients are normalized before each step.
void mean_scale(std::vector<double>& grad, const BufferEntry& entry) {
  double inv = 1.0 / static_cast<double>(entry.samples.size());
  for (double& g : grad) g *= inv;
}

}  // namespace

void OnlineAdapter::train_from(std::vector<double> init, const BufferEntry& entry) {
  std::vector<double> phi = std::move(init);
  std::vector<double> grad;
  if (config_.online_opt == OptKind::adam) {
    AdamState adam(phi.size());
    for (int it = 0; it < config_.online_iters; ++it) {
      model_.loss_grad(phi, entry, &grad);
      mean_scale(grad, entry);
      adam.step(phi, grad, config_.eta);
    }
  } else {
    for (int it = 0; it < config_.online_iters; ++it) {
      model_.loss_grad(phi, entry, &grad);
      mean_scale(grad, entry);
      sgd_step(phi, grad, config_.eta);
    }
  }
  model_.params() = std::move(phi);
}

void OnlineAdapter::online_update(const BufferEntry& entry) { train_from(theta_, entry); }

void OnlineAdapter::plain_online_update(const BufferEntry& entry) {
  train_from(model_.params(), entry);
}

void OnlineAdapter::meta_update() {
  std::vector<double> grad;
  std::vector<double> adapted;
  for (int it = 0; it < config_.meta_iters; ++it) {
    auto pair = select_meta_pair(buffer_, config_.window, rng_);
    if (!pair) return;  // no valid pair can appear mid-loop
    // inner: one plain GD step from theta on the support block
    model_.loss_grad(theta_, *pair->support, &grad);
    mean_scale(grad, *pair->support);
    adapted = theta_;
    sgd_step(adapted, grad, config_.eta);
    // outer (first-order): query gradient at the adapted point, applied to theta
    model_.loss_grad(adapted, *pair->query, &grad);
    mean_scale(grad, *pair->query);
    sgd_step(theta_, grad, config_.kappa);
  }
}

ProcessResult OnlineAdapter::process_block(const ObservationBlock& observations,
                                           const SymbolBlock* pilot_truth) {
  ProcessResult result;
  result.detected = model_.detect(observations);

  std::optional<BufferEntry> entry;
  if (pilot_truth) {
    result.decode_success = true;
    entry = BufferEntry{observations.block_index, pilot_truth->symbols, observations.samples};
  } else {
    auto remod = codec_(result.detected);
    if (remod) {
      result.decode_success = true;
      result.corrected_symbols = remod->corrected_symbols;
      entry = BufferEntry{observations.block_index, std::move(remod->symbols),
                          observations.samples};
    }
  }
  if (entry) buffer_.insert(*entry);

  if (!model_.trainable()) return result;

  // meta section precedes the online-learning section
  if (config_.method == TrainMethod::meta &&
      observations.block_index % config_.meta_period == 0) {
    meta_update();
    result.meta_ran = true;
  }

  if (entry && config_.method != TrainMethod::joint) {
    if (config_.method == TrainMethod::meta)
      online_update(*entry);
    else
      plain_online_update(*entry);
    result.trained = true;
  }
  return result;
}

}  // namespace mvnet
