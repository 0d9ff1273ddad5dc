#include "sls/random.hpp"

#include <algorithm>

#include <sodium.h>

#include "sls/error.hpp"
#include "sls/hash.hpp"

namespace sls {

uint64_t RandomSource::next_u64() {
  std::array<uint8_t, 8> buf{};
  fill(buf);
  uint64_t v = 0;
  for (uint8_t b : buf) v = (v << 8) | b;
  return v;
}

SystemRandom::SystemRandom() {
  if (sodium_init() < 0) {
    throw Error(ErrorCode::kIo, "libsodium initialisation failed");
  }
}

void SystemRandom::fill(std::span<uint8_t> out) {
  randombytes_buf(out.data(), out.size());
}

SeededRandom::SeededRandom(ByteView seed) : seed_(seed.begin(), seed.end()) {}

SeededRandom::SeededRandom(uint64_t seed) {
  append_u64be(seed, &seed_);
}

void SeededRandom::refill() {
  Bytes ctr;
  append_u64be(counter_++, &ctr);
  block_ = domain_hash("drbg", {seed_, ctr});
  used_ = 0;
}

void SeededRandom::fill(std::span<uint8_t> out) {
  size_t pos = 0;
  while (pos < out.size()) {
    if (used_ == block_.size()) refill();
    const size_t take = std::min(out.size() - pos, block_.size() - used_);
    std::copy_n(block_.begin() + static_cast<std::ptrdiff_t>(used_), take,
                out.begin() + static_cast<std::ptrdiff_t>(pos));
    used_ += take;
    pos += take;
  }
}

mpz_class random_bits(RandomSource& rng, size_t bits) {
  if (bits == 0) return 0;
  Bytes buf((bits + 7) / 8);
  rng.fill(buf);
  const size_t excess = buf.size() * 8 - bits;
  buf[0] &= static_cast<uint8_t>(0xFF >> excess);
  return decode_mpz(buf);
}

mpz_class random_below(RandomSource& rng, const mpz_class& bound) {
  if (bound <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "random_below needs a positive bound");
  }
  const size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  for (;;) {
    mpz_class candidate = random_bits(rng, bits);
    if (candidate < bound) return candidate;
  }
}

mpz_class random_range(RandomSource& rng, const mpz_class& lo, const mpz_class& hi) {
  if (hi < lo) {
    throw Error(ErrorCode::kInvalidArgument, "empty random range");
  }
  mpz_class span = hi - lo + 1;
  return lo + random_below(rng, span);
}

}  // namespace sls
