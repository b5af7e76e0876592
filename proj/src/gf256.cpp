#include "mvnet/gf256.hpp"

#include <array>
#include <stdexcept>

namespace mvnet::gf {
namespace {

struct Tables {
  std::array<Elem, 512> exp{};
  std::array<int, 256> log{};

  Tables() {
    unsigned x = 1;
    for (int i = 0; i < 255; ++i) {
      exp[i] = static_cast<Elem>(x);
      log[x] = i;
      x <<= 1;
      if (x & 0x100) x ^= kPrimitivePoly;
    }
    for (int i = 255; i < 512; ++i) exp[i] = exp[i - 255];
    log[0] = -1;
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

}  // namespace

Elem mul(Elem a, Elem b) {
  if (a == 0 || b == 0) return 0;
  const Tables& t = tables();
  return t.exp[t.log[a] + t.log[b]];
}

Elem inv(Elem a) {
  if (a == 0) throw std::domain_error("gf::inv: zero has no inverse");
  const Tables& t = tables();
  return t.exp[255 - t.log[a]];
}

Elem pow_alpha(int e) {
  e %= 255;
  if (e < 0) e += 255;
  return tables().exp[e];
}

int log_alpha(Elem a) {
  if (a == 0) throw std::domain_error("gf::log_alpha: log of zero");
  return tables().log[a];
}

}  // namespace mvnet::gf
