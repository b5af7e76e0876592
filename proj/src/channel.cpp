#include "mvnet/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace mvnet {

std::vector<int> bpsk_modulate(const std::vector<std::uint8_t>& bits) {
  std::vector<int> symbols(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) throw std::invalid_argument("bpsk_modulate: bits must be 0 or 1");
    symbols[i] = bits[i] ? -1 : +1;
  }
  return symbols;
}

std::vector<std::uint8_t> bpsk_hard_demod(const std::vector<double>& samples) {
  std::vector<std::uint8_t> bits(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) bits[i] = samples[i] < 0.0 ? 1 : 0;
  return bits;
}

double snr_to_variance(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

std::vector<double> apply_channel(const std::vector<int>& symbols,
                                  const std::vector<double>& taps, double noise_variance,
                                  Rng& rng) {
  if (noise_variance < 0.0)
    throw std::invalid_argument("apply_channel: negative noise variance");
  const int memory = static_cast<int>(taps.size());
  const int n = static_cast<int>(symbols.size());
  std::vector<double> out(n);
  const double sigma = std::sqrt(noise_variance);
  for (int i = 0; i < n; ++i) {
    double y = 0.0;
    for (int l = 0; l < memory && l <= i; ++l) y += taps[l] * symbols[i - l];
    if (sigma > 0.0) y += sigma * rng.gaussian();
    out[i] = y;
  }
  return out;
}

}  // namespace mvnet
