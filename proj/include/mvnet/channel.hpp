#pragma once

#include <cstdint>
#include <vector>

#include "mvnet/rng.hpp"

namespace mvnet {

struct SymbolBlock {
  std::vector<int> symbols;  // entries in {+1, -1}
  int block_index = 0;
  bool is_pilot = false;
};

struct ObservationBlock {
  std::vector<double> samples;
  int block_index = 0;
  double snr_db = 0.0;
};

// bit 0 -> +1, bit 1 -> -1
std::vector<int> bpsk_modulate(const std::vector<std::uint8_t>& bits);
std::vector<std::uint8_t> bpsk_hard_demod(const std::vector<double>& samples);

// sigma^2 = 10^(-snr_db/10); SNR is defined as 1/sigma^2
double snr_to_variance(double snr_db);

// y_i = sum_l h_l * s_{i-l} + w_i, with a zero guard prefix (s_i = 0 for i < 1)
// and w_i ~ N(0, sigma^2) drawn from rng.
std::vector<double> apply_channel(const std::vector<int>& symbols,
                                  const std::vector<double>& taps, double noise_variance,
                                  Rng& rng);

}  // namespace mvnet
