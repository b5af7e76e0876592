#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mvnet/adapt.hpp"
#include "mvnet/taps.hpp"

namespace mvnet {

enum class EqualizerKind { viterbinet, lstm, full_csi };

// Two named synthetic presets: pre-training uses "synthetic-train", evaluation
// defaults to the mismatched "synthetic-test" variant.
struct ExperimentConfig {
  int total_blocks = 300;   // T
  int frame_length = 25;    // t_f
  int block_length = 136;   // B = 8 * 17 code bits
  int memory = 4;           // L
  std::vector<double> snr_db{12.0};
  std::uint64_t seed = 1;

  EqualizerKind equalizer = EqualizerKind::viterbinet;
  TrainMethod training = TrainMethod::meta;

  std::string train_taps = "synthetic-train";  // preset name or file:<path>
  std::string test_taps = "synthetic-test";

  AdaptConfig adapt;  // eta, kappa, iteration budgets, K, W, D

  int pretrain_blocks = 40;        // T_t
  int pretrain_iters = 1000;       // pooled full-batch Adam steps
  double pretrain_lr = 5e-3;       // decays linearly to 1e-4 over the budget
  int pretrain_meta_iters = 1000;  // offline meta iterations

  int lstm_hidden = 64;
  bool guard_start = true;  // trellis initialization (all-zero guard state)
  double max_seconds = 0.0;  // 0 = unlimited

  // Pilot symbol content seed, known to both ends.
  std::uint64_t pilot_seed = 0x70696c6f74ull;

  void validate() const;  // throws on inconsistent settings
};

ExperimentConfig parse_config_file(const std::string& path);
// Applies one "key = value" assignment; unknown keys are rejected.
void apply_config_entry(ExperimentConfig& cfg, const std::string& key, const std::string& value);

TapSchedule resolve_taps(const std::string& source, std::size_t num_blocks);

std::string to_string(EqualizerKind kind);
std::string to_string(TrainMethod method);
EqualizerKind parse_equalizer(const std::string& text);
TrainMethod parse_training(const std::string& text);

}  // namespace mvnet
