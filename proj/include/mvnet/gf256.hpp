#pragma once

#include <cstdint>

// GF(2^8) arithmetic under the primitive polynomial x^8+x^4+x^3+x^2+1 (0x11d),
// generator element alpha = 0x02.
namespace mvnet::gf {

using Elem = std::uint8_t;

inline constexpr unsigned kPrimitivePoly = 0x11d;

inline Elem add(Elem a, Elem b) { return static_cast<Elem>(a ^ b); }

Elem mul(Elem a, Elem b);
Elem inv(Elem a);          // a != 0
Elem pow_alpha(int e);     // alpha^e, e may be negative
int log_alpha(Elem a);     // a != 0, result in [0, 255)

}  // namespace mvnet::gf
