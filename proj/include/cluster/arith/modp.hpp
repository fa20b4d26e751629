#pragma once

#include <cstdint>

#include <gmpxx.h>

namespace cluster {

/// Arithmetic in Z/pZ for a prime p < 2^63.
struct ModP {
  uint64_t p;

  uint64_t reduce(const mpz_class& c) const {
    static_assert(sizeof(unsigned long) == sizeof(uint64_t));
    return mpz_fdiv_ui(c.get_mpz_t(), p);
  }
  uint64_t mul(uint64_t a, uint64_t b) const {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
  }
  uint64_t add(uint64_t a, uint64_t b) const {
    uint64_t s = a + b;
    return s >= p ? s - p : s;
  }
  uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + (p - b); }
  uint64_t pow(uint64_t a, uint64_t e) const {
    uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  uint64_t inv(uint64_t a) const { return pow(a, p - 2); }
};

}  // namespace cluster
