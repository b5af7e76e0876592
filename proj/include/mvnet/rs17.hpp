#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "mvnet/gf256.hpp"

// Reed-Solomon [17,15] over GF(256): 15 data bytes, 2 parity bytes,
// minimum distance 3 (corrects one symbol, detects most heavier patterns).
// Shortened from the natural (255,253) code by treating leading bytes as zero.
// Generator polynomial roots: alpha^1 and alpha^2.
namespace mvnet::rs {

inline constexpr int kDataBytes = 15;
inline constexpr int kCodeBytes = 17;
inline constexpr int kCodeBits = kCodeBytes * 8;  // 136, the block length B

using Message = std::array<std::uint8_t, kDataBytes>;
using Codeword = std::array<std::uint8_t, kCodeBytes>;

struct DecodeOutcome {
  std::optional<Message> message;
  bool success = false;
  int corrected_symbols = 0;
};

// Systematic: codeword[0..14] = message, codeword[15..16] = parity.
Codeword encode(const Message& message);

DecodeOutcome decode(const Codeword& received);

// Both syndromes zero iff the word is a valid codeword.
std::array<gf::Elem, 2> syndromes(const Codeword& word);

}  // namespace mvnet::rs
