#include <doctest.h>

#include <vector>

#include "mvnet/bits.hpp"
#include "mvnet/gf256.hpp"
#include "mvnet/rng.hpp"
#include "mvnet/rs17.hpp"

using namespace mvnet;

TEST_CASE("gf256 multiplication basics") {
  for (int a = 0; a < 256; ++a) {
    CHECK(gf::mul(static_cast<gf::Elem>(a), 1) == a);
    CHECK(gf::mul(static_cast<gf::Elem>(a), 0) == 0);
  }
  CHECK(gf::mul(0x02, 0x02) == 0x04);
  CHECK(gf::mul(0x80, 0x02) == 0x1D);  // x^8 mod x^8+x^4+x^3+x^2+1
}

TEST_CASE("gf256 field axioms on random triples") {
  Rng rng(42);
  for (int t = 0; t < 2000; ++t) {
    auto a = static_cast<gf::Elem>(rng.uniform_int(256));
    auto b = static_cast<gf::Elem>(rng.uniform_int(256));
    auto c = static_cast<gf::Elem>(rng.uniform_int(256));
    CHECK(gf::mul(a, b) == gf::mul(b, a));
    CHECK(gf::mul(gf::mul(a, b), c) == gf::mul(a, gf::mul(b, c)));
    CHECK(gf::mul(a, static_cast<gf::Elem>(b ^ c)) ==
          (gf::mul(a, b) ^ gf::mul(a, c)));
    CHECK(static_cast<gf::Elem>(a ^ a) == 0);
  }
}

TEST_CASE("gf256 multiplicative inverse") {
  for (int a = 1; a < 256; ++a)
    CHECK(gf::mul(static_cast<gf::Elem>(a), gf::inv(static_cast<gf::Elem>(a))) == 1);
  CHECK_THROWS(gf::inv(0));
}

TEST_CASE("pack/unpack bits MSB-first") {
  CHECK(pack_bits({0, 0, 0, 0, 0, 0, 0, 0}) == std::vector<std::uint8_t>{0x00});
  CHECK(pack_bits({1, 0, 0, 0, 0, 0, 0, 0}) == std::vector<std::uint8_t>{0x80});
  CHECK_THROWS(pack_bits({1, 0, 1}));  // not a multiple of 8

  Rng rng(7);
  std::vector<std::uint8_t> bits(136);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng.uniform_int(2));
  CHECK(unpack_bits(pack_bits(bits)) == bits);
}

namespace {

rs::Message random_message(Rng& rng) {
  rs::Message m;
  for (auto& b : m) b = static_cast<std::uint8_t>(rng.uniform_int(256));
  return m;
}

}  // namespace

TEST_CASE("rs17 encode basics") {
  rs::Message zero{};
  rs::Codeword zc = rs::encode(zero);
  for (auto b : zc) CHECK(b == 0);

  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    rs::Message m1 = random_message(rng);
    rs::Message m2 = random_message(rng);
    rs::Codeword c1 = rs::encode(m1);
    rs::Codeword c2 = rs::encode(m2);
    // systematic: data bytes appear unchanged
    for (int i = 0; i < rs::kDataBytes; ++i) CHECK(c1[i] == m1[i]);
    // linearity
    rs::Message mx;
    for (int i = 0; i < rs::kDataBytes; ++i) mx[i] = m1[i] ^ m2[i];
    rs::Codeword cx = rs::encode(mx);
    for (int i = 0; i < rs::kCodeBytes; ++i) CHECK(cx[i] == (c1[i] ^ c2[i]));
    // valid codewords have zero syndromes
    auto syn = rs::syndromes(c1);
    CHECK(syn[0] == 0);
    CHECK(syn[1] == 0);
  }
}

TEST_CASE("rs17 decode roundtrip and single-error correction") {
  Rng rng(11);
  for (int t = 0; t < 10; ++t) {
    rs::Message m = random_message(rng);
    rs::Codeword c = rs::encode(m);

    rs::DecodeOutcome clean = rs::decode(c);
    CHECK(clean.success);
    CHECK(clean.corrected_symbols == 0);
    CHECK(*clean.message == m);

    // a sampling of single-symbol errors (the exhaustive sweep lives in the
    // acceptance suite)
    for (int pos = 0; pos < rs::kCodeBytes; ++pos) {
      auto err = static_cast<std::uint8_t>(1 + rng.uniform_int(255));
      rs::Codeword r = c;
      r[pos] ^= err;
      rs::DecodeOutcome out = rs::decode(r);
      CHECK(out.success);
      CHECK(out.corrected_symbols == 1);
      CHECK(*out.message == m);
    }
  }
}

TEST_CASE("rs17 two-error behaviour") {
  Rng rng(13);
  rs::Message m = random_message(rng);
  rs::Codeword c = rs::encode(m);

  // find a concrete detectable two-error pattern by brute force
  bool found_detected = false;
  for (int p1 = 0; p1 < rs::kCodeBytes && !found_detected; ++p1)
    for (int p2 = p1 + 1; p2 < rs::kCodeBytes && !found_detected; ++p2) {
      rs::Codeword r = c;
      r[p1] ^= 0x01;
      r[p2] ^= 0x01;
      if (!rs::decode(r).success) found_detected = true;
    }
  CHECK(found_detected);

  // distance-3 geometry: some two-error patterns miscorrect, but rarely
  int miscorrections = 0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    int p1 = static_cast<int>(rng.uniform_int(rs::kCodeBytes));
    int p2 = static_cast<int>(rng.uniform_int(rs::kCodeBytes));
    while (p2 == p1) p2 = static_cast<int>(rng.uniform_int(rs::kCodeBytes));
    rs::Codeword r = c;
    r[p1] ^= static_cast<std::uint8_t>(1 + rng.uniform_int(255));
    r[p2] ^= static_cast<std::uint8_t>(1 + rng.uniform_int(255));
    rs::DecodeOutcome out = rs::decode(r);
    if (out.success && *out.message != m) ++miscorrections;
  }
  CHECK(miscorrections < trials / 10);
}
