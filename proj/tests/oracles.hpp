#pragma once

// Independent reference computations for tests. Nothing here calls into the
// library's arithmetic.

#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

inline bool is_prime_trial(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline bool is_safe_prime_trial(uint64_t p) {
  return is_prime_trial(p) && p % 2 == 1 && is_prime_trial((p - 1) / 2) &&
         ((p - 1) / 2) % 2 == 1;
}

inline std::vector<uint64_t> safe_primes_with_bits(unsigned bits) {
  std::vector<uint64_t> out;
  for (uint64_t n = uint64_t{1} << (bits - 1); n < (uint64_t{1} << bits); ++n) {
    if (is_safe_prime_trial(n)) out.push_back(n);
  }
  return out;
}

// Plain square-and-multiply over 128-bit intermediates.
inline uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t mod) {
  unsigned __int128 result = 1 % mod;
  unsigned __int128 b = base % mod;
  while (exp > 0) {
    if (exp & 1) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<uint64_t>(result);
}

// T squarings by repeated multiplication.
inline uint64_t square_t_times(uint64_t x, uint64_t t, uint64_t mod) {
  unsigned __int128 y = x % mod;
  for (uint64_t i = 0; i < t; ++i) y = y * y % mod;
  return static_cast<uint64_t>(y);
}

}  // namespace oracle
