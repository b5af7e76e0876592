#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <vector>

#include "mvnet/channel.hpp"
#include "mvnet/rng.hpp"

namespace mvnet {

// One labelled block: transmitted (or re-encoded) symbols plus observations.
struct BufferEntry {
  int block_index = 0;
  std::vector<int> symbols;
  std::vector<double> samples;
};

// FIFO store of labelled blocks feeding online and meta updates.
class AdaptationBuffer {
 public:
  explicit AdaptationBuffer(int capacity);

  void insert(BufferEntry entry);  // throws on non-increasing block_index
  std::size_t size() const { return entries_.size(); }
  int capacity() const { return capacity_; }
  const BufferEntry& entry(std::size_t k) const { return entries_[k]; }

 private:
  std::deque<BufferEntry> entries_;
  int capacity_;
};

// Support/query pair for a meta step: query sampled uniformly among entries
// whose predecessor in the buffer is at most `window` block indices older.
struct MetaPair {
  const BufferEntry* support;
  const BufferEntry* query;
};
std::optional<MetaPair> select_meta_pair(const AdaptationBuffer& buffer, int window, Rng& rng);

// Detection plus per-block training surface needed by the adaptation engine.
class EqualizerModel {
 public:
  virtual ~EqualizerModel() = default;
  virtual bool trainable() const { return true; }
  virtual std::vector<double>& params() = 0;
  virtual const std::vector<double>& params() const = 0;
  // Summed cross entropy of `entry` under weight vector `at` (not necessarily
  // the current detector weights), with optional analytic gradient.
  virtual double loss_grad(const std::vector<double>& at, const BufferEntry& entry,
                           std::vector<double>* grad) const = 0;
  virtual std::vector<int> detect(const ObservationBlock& observations) const = 0;
};

enum class TrainMethod { joint, online, meta };
enum class OptKind { adam, sgd };

struct AdaptConfig {
  double eta = 1e-3;        // online learning rate (per-sample gradient scale)
  double kappa = 1e-3;      // meta learning rate
  int online_iters = 200;   // full-batch steps per online update
  int meta_iters = 200;     // iterations per meta event
  int meta_period = 5;      // K
  int window = 1;           // W
  int buffer_capacity = 15;  // D
  TrainMethod method = TrainMethod::meta;
  OptKind online_opt = OptKind::adam;
};

struct ProcessResult {
  std::vector<int> detected;
  bool decode_success = false;   // pilots report true
  int corrected_symbols = 0;
  bool trained = false;
  bool meta_ran = false;
};

// The per-receiver adaptation engine: decode-gated self-supervised online
// training, and periodic first-order meta-updates of the initialization theta.
class OnlineAdapter {
 public:
  // Returns the re-encoded, re-modulated symbols when decoding succeeds.
  struct Remodulated {
    std::vector<int> symbols;
    int corrected_symbols = 0;
  };
  using DecodeRemodulate = std::function<std::optional<Remodulated>(const std::vector<int>&)>;

  OnlineAdapter(EqualizerModel& model, AdaptConfig config, DecodeRemodulate codec,
                std::uint64_t seed);

  const std::vector<double>& theta() const { return theta_; }
  void set_theta(std::vector<double> theta);

  // phi <- `online_iters` steps on the entry loss, initialized from theta.
  void online_update(const BufferEntry& entry);
  // Non-meta baseline: initialized from the previous phi instead.
  void plain_online_update(const BufferEntry& entry);
  // First-order MAML over sampled support/query pairs; updates theta only.
  void meta_update();

  ProcessResult process_block(const ObservationBlock& observations,
                              const SymbolBlock* pilot_truth);

  AdaptationBuffer& buffer() { return buffer_; }
  const AdaptConfig& config() const { return config_; }

 private:
  void train_from(std::vector<double> init, const BufferEntry& entry);

  EqualizerModel& model_;
  AdaptConfig config_;
  DecodeRemodulate codec_;
  AdaptationBuffer buffer_;
  std::vector<double> theta_;
  Rng rng_;
};

}  // namespace mvnet
