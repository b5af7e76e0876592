#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace mvnet {

// MSB-first bit<->byte packing.
inline std::vector<std::uint8_t> pack_bits(const std::vector<std::uint8_t>& bits) {
  if (bits.size() % 8 != 0)
    throw std::invalid_argument("pack_bits: bit count must be a multiple of 8");
  std::vector<std::uint8_t> bytes(bits.size() / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) throw std::invalid_argument("pack_bits: entries must be 0 or 1");
    bytes[i / 8] = static_cast<std::uint8_t>((bytes[i / 8] << 1) | bits[i]);
  }
  return bytes;
}

inline std::vector<std::uint8_t> unpack_bits(const std::vector<std::uint8_t>& bytes) {
  std::vector<std::uint8_t> bits;
  bits.reserve(bytes.size() * 8);
  for (std::uint8_t b : bytes)
    for (int k = 7; k >= 0; --k) bits.push_back((b >> k) & 1u);
  return bits;
}

}  // namespace mvnet
