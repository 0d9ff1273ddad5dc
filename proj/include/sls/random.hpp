#pragma once

#include <array>
#include <cstdint>
#include <span>

#include <gmpxx.h>

#include "sls/bytes.hpp"

namespace sls {

// Source of random bytes. Every rng-consuming operation takes one of these so
// tests can substitute a seeded stream.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual void fill(std::span<uint8_t> out) = 0;

  uint64_t next_u64();
};

// Operating-system entropy (libsodium randombytes).
class SystemRandom final : public RandomSource {
 public:
  SystemRandom();
  void fill(std::span<uint8_t> out) override;
};

// Deterministic stream: SHA-256("SLS-v1/drbg" || lp(seed) || lp(counter)).
class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(ByteView seed);
  explicit SeededRandom(uint64_t seed);

  void fill(std::span<uint8_t> out) override;

 private:
  void refill();

  Bytes seed_;
  uint64_t counter_ = 0;
  std::array<uint8_t, 32> block_{};
  size_t used_ = 32;
};

// Uniform in [0, 2^bits).
mpz_class random_bits(RandomSource& rng, size_t bits);
// Uniform in [0, bound); bound must be positive.
mpz_class random_below(RandomSource& rng, const mpz_class& bound);
// Uniform in [lo, hi].
mpz_class random_range(RandomSource& rng, const mpz_class& lo, const mpz_class& hi);

}  // namespace sls
