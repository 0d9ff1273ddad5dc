#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <utility>

#include <gmpxx.h>

#include "sls/random.hpp"

namespace sls {

inline constexpr int kMillerRabinRounds = 40;
inline constexpr unsigned kMinLambda = 16;
// Candidates tried per requested bit before a prime search gives up.
inline constexpr size_t kPrimeAttemptsPerBit = 10'000;
inline constexpr unsigned kModulusAttempts = 64;

// Security parameter. lambda is the bit length of EACH prime factor, so the
// modulus N = p*q has 2*lambda bits. 16 is a desk-scale floor; real
// deployments want lambda >= 1024.
struct SecurityConfig {
  unsigned lambda = 0;

  explicit SecurityConfig(unsigned lambda_bits);
};

// Miller-Rabin with `rounds` witnesses drawn from rng.
bool is_probable_prime(const mpz_class& n, RandomSource& rng,
                       int rounds = kMillerRabinRounds);
// Same test with witnesses from a stream seeded by n itself, so the answer is
// reproducible. Used for validating parsed or caller-supplied values.
bool is_probable_prime(const mpz_class& n);

mpz_class gen_prime(unsigned bits, RandomSource& rng);
// Prime p of exactly `bits` bits with (p-1)/2 also an odd prime (p = 3 mod 4).
mpz_class gen_safe_prime(unsigned bits, RandomSource& rng);
bool is_safe_prime(const mpz_class& p);

// Public modulus N. Copies share the underlying integer.
class RsaModulus {
 public:
  explicit RsaModulus(mpz_class n);

  const mpz_class& n() const { return *n_; }
  size_t bit_length() const { return bit_length_; }

  friend bool operator==(const RsaModulus& a, const RsaModulus& b) {
    return a.n_ == b.n_ || *a.n_ == *b.n_;
  }

 private:
  std::shared_ptr<const mpz_class> n_;
  size_t bit_length_;
};

struct TrapdoorSecret {
  mpz_class p;
  mpz_class q;
  mpz_class phi;

  bool matches(const RsaModulus& modulus) const { return p * q == modulus.n(); }
  void wipe();
};

// Element of Z*_N: 1 <= value < N and gcd(value, N) = 1.
class GroupElement {
 public:
  GroupElement(mpz_class value, RsaModulus modulus);

  const mpz_class& value() const { return value_; }
  const RsaModulus& modulus() const { return modulus_; }

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.modulus_ == b.modulus_ && a.value_ == b.value_;
  }

 private:
  mpz_class value_;
  RsaModulus modulus_;
};

// Validates that p != q are safe primes and builds (N, trapdoor).
std::pair<RsaModulus, TrapdoorSecret> modulus_from_primes(const mpz_class& p,
                                                          const mpz_class& q);

std::pair<RsaModulus, TrapdoorSecret> setup_modulus(const SecurityConfig& cfg,
                                                    RandomSource& rng);

GroupElement sample_element(const RsaModulus& modulus, RandomSource& rng);

// Rejection sampling over an explicit candidate stream: returns the first
// candidate c with 1 < c < N and gcd(c, N) = 1.
GroupElement sample_element_from(const RsaModulus& modulus,
                                 const std::function<mpz_class()>& next_candidate,
                                 size_t max_attempts = 1'000'000);

GroupElement mod_exp(const GroupElement& base, const mpz_class& exponent,
                     const RsaModulus& modulus);

}  // namespace sls
