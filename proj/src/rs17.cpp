#include "mvnet/rs17.hpp"

namespace mvnet::rs {

using gf::Elem;

namespace {

// g(x) = (x - alpha)(x - alpha^2) = x^2 + g1 x + g0
constexpr Elem kG1 = 0x06;  // alpha + alpha^2
constexpr Elem kG0 = 0x08;  // alpha^3

}  // namespace

Codeword encode(const Message& message) {
  Codeword cw{};
  for (int i = 0; i < kDataBytes; ++i) cw[i] = message[i];
  // Polynomial long division of m(x) * x^2 by g(x); symbol k has degree 16-k.
  Elem r1 = 0, r0 = 0;
  for (int i = 0; i < kDataBytes; ++i) {
    Elem feedback = gf::add(message[i], r1);
    r1 = gf::add(r0, gf::mul(feedback, kG1));
    r0 = gf::mul(feedback, kG0);
  }
  cw[kDataBytes] = r1;
  cw[kDataBytes + 1] = r0;
  return cw;
}

std::array<Elem, 2> syndromes(const Codeword& word) {
  // S_t = sum_k word[k] * alpha^(t * (16-k)), evaluated with Horner's rule.
  Elem s1 = 0, s2 = 0;
  for (int k = 0; k < kCodeBytes; ++k) {
    s1 = gf::add(gf::mul(s1, 0x02), word[k]);
    s2 = gf::add(gf::mul(s2, 0x04), word[k]);
  }
  return {s1, s2};
}

DecodeOutcome decode(const Codeword& received) {
  auto [s1, s2] = syndromes(received);
  DecodeOutcome out;

  Codeword corrected = received;
  if (s1 == 0 && s2 == 0) {
    out.success = true;
  } else if (s1 != 0 && s2 != 0) {
    // Single error e at degree p: s1 = e*alpha^p, s2 = e*alpha^(2p).
    int p = gf::log_alpha(gf::mul(s2, gf::inv(s1)));
    if (p > kCodeBytes - 1) return out;  // shortened region: uncorrectable
    Elem e = gf::mul(s1, gf::inv(gf::pow_alpha(p)));
    corrected[kCodeBytes - 1 - p] = gf::add(corrected[kCodeBytes - 1 - p], e);
    out.success = true;
    out.corrected_symbols = 1;
  } else {
    return out;  // exactly one zero syndrome: inconsistent with <=1 error
  }

  Message m{};
  for (int i = 0; i < kDataBytes; ++i) m[i] = corrected[i];
  out.message = m;
  return out;
}

}  // namespace mvnet::rs
