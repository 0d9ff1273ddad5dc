#include "sls/numtheory.hpp"

#include <array>
#include <string>

#include "sls/error.hpp"

namespace sls {

namespace {

constexpr std::array<unsigned, 54> kSmallPrimes = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,
    47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107,
    109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181,
    191, 193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251};

// 0: composite, 1: prime, 2: undecided (n exceeds the table).
int trial_division(const mpz_class& n) {
  for (unsigned p : kSmallPrimes) {
    if (n == p) return 1;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return 0;
  }
  return n < 251UL * 251UL ? 1 : 2;
}

mpz_class random_odd_of_bits(RandomSource& rng, unsigned bits) {
  mpz_class c = random_bits(rng, bits);
  mpz_setbit(c.get_mpz_t(), bits - 1);
  mpz_setbit(c.get_mpz_t(), 0);
  return c;
}

}  // namespace

SecurityConfig::SecurityConfig(unsigned lambda_bits) : lambda(lambda_bits) {
  if (lambda_bits < kMinLambda) {
    throw Error(ErrorCode::kInvalidArgument,
                "lambda must be at least " + std::to_string(kMinLambda) + " bits");
  }
}

bool is_probable_prime(const mpz_class& n, RandomSource& rng, int rounds) {
  if (n < 2) return false;
  const int small = trial_division(n);
  if (small != 2) return small == 1;

  const mpz_class n_minus_1 = n - 1;
  mpz_class d = n_minus_1;
  const mp_bitcnt_t s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  mpz_class x;
  for (int round = 0; round < rounds; ++round) {
    const mpz_class a = random_range(rng, 2, n - 2);
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n_minus_1) continue;
    bool witness = true;
    for (mp_bitcnt_t i = 1; i < s; ++i) {
      mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
      if (x == n_minus_1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

bool is_probable_prime(const mpz_class& n) {
  if (n < 2) return false;
  SeededRandom rng(encode_mpz(n));
  return is_probable_prime(n, rng);
}

bool is_safe_prime(const mpz_class& p) {
  // p' = (p-1)/2 must be an odd prime, which rules out 5 = 2*2+1.
  if (p < 7 || mpz_tstbit(p.get_mpz_t(), 1) == 0) return false;
  mpz_class half = (p - 1) / 2;
  return is_probable_prime(half) && is_probable_prime(p);
}

mpz_class gen_prime(unsigned bits, RandomSource& rng) {
  if (bits < 2) {
    throw Error(ErrorCode::kInvalidArgument, "prime needs at least 2 bits");
  }
  if (bits == 2) return random_bits(rng, 1) == 0 ? 2 : 3;
  const size_t limit = kPrimeAttemptsPerBit * bits;
  for (size_t attempt = 0; attempt < limit; ++attempt) {
    mpz_class c = random_odd_of_bits(rng, bits);
    if (is_probable_prime(c, rng)) return c;
  }
  throw Error(ErrorCode::kRetryExhausted,
              "no " + std::to_string(bits) + "-bit prime found");
}

mpz_class gen_safe_prime(unsigned bits, RandomSource& rng) {
  if (bits < 3) {
    throw Error(ErrorCode::kInvalidArgument, "safe prime needs at least 3 bits");
  }
  const size_t limit = kPrimeAttemptsPerBit * bits;
  for (size_t attempt = 0; attempt < limit; ++attempt) {
    mpz_class c = random_odd_of_bits(rng, bits);
    mpz_setbit(c.get_mpz_t(), 1);
    mpz_class half = (c - 1) / 2;
    // Cheap sieve on both numbers before any Miller-Rabin round.
    if (trial_division(c) == 0 || trial_division(half) == 0) continue;
    if (!is_probable_prime(c, rng)) continue;
    if (is_probable_prime(half, rng)) return c;
  }
  throw Error(ErrorCode::kRetryExhausted,
              "no " + std::to_string(bits) + "-bit safe prime found");
}

RsaModulus::RsaModulus(mpz_class n)
    : n_(std::make_shared<const mpz_class>(std::move(n))),
      bit_length_(mpz_sizeinbase(n_->get_mpz_t(), 2)) {
  if (*n_ < 9 || mpz_even_p(n_->get_mpz_t())) {
    throw Error(ErrorCode::kMalformedParams, "modulus must be an odd composite");
  }
  if (is_probable_prime(*n_)) {
    throw Error(ErrorCode::kMalformedParams, "modulus is prime");
  }
}

void TrapdoorSecret::wipe() {
  sls::wipe(p);
  sls::wipe(q);
  sls::wipe(phi);
}

GroupElement::GroupElement(mpz_class value, RsaModulus modulus)
    : value_(std::move(value)), modulus_(std::move(modulus)) {
  if (value_ < 1 || value_ >= modulus_.n()) {
    throw Error(ErrorCode::kInvalidArgument, "group element out of range [1, N-1]");
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), value_.get_mpz_t(), modulus_.n().get_mpz_t());
  if (g != 1) {
    throw Error(ErrorCode::kInvalidArgument, "group element not coprime to N");
  }
}

std::pair<RsaModulus, TrapdoorSecret> modulus_from_primes(const mpz_class& p,
                                                          const mpz_class& q) {
  if (p == q) {
    throw Error(ErrorCode::kInvalidArgument, "p and q must differ");
  }
  if (!is_safe_prime(p) || !is_safe_prime(q)) {
    throw Error(ErrorCode::kInvalidArgument, "p and q must be safe primes");
  }
  TrapdoorSecret sp{p, q, (p - 1) * (q - 1)};
  return {RsaModulus(p * q), std::move(sp)};
}

std::pair<RsaModulus, TrapdoorSecret> setup_modulus(const SecurityConfig& cfg,
                                                    RandomSource& rng) {
  // Both primes have the top bit set, so N has 2*lambda - 1 or 2*lambda bits;
  // resample the pair until it is the full width.
  const size_t target_bits = 2 * static_cast<size_t>(cfg.lambda);
  for (unsigned attempt = 0; attempt < kModulusAttempts; ++attempt) {
    mpz_class p = gen_safe_prime(cfg.lambda, rng);
    mpz_class q = gen_safe_prime(cfg.lambda, rng);
    mpz_class n = p * q;
    if (q == p || mpz_sizeinbase(n.get_mpz_t(), 2) != target_bits) continue;
    TrapdoorSecret sp{p, q, (p - 1) * (q - 1)};
    return {RsaModulus(std::move(n)), std::move(sp)};
  }
  throw Error(ErrorCode::kRetryExhausted, "no full-width modulus found");
}

GroupElement sample_element(const RsaModulus& modulus, RandomSource& rng) {
  const mpz_class hi = modulus.n() - 2;
  return sample_element_from(modulus, [&] { return random_range(rng, 2, hi); });
}

GroupElement sample_element_from(const RsaModulus& modulus,
                                 const std::function<mpz_class()>& next_candidate,
                                 size_t max_attempts) {
  mpz_class g;
  for (size_t attempt = 0; attempt < max_attempts; ++attempt) {
    mpz_class c = next_candidate();
    if (c <= 1 || c >= modulus.n()) continue;
    mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), modulus.n().get_mpz_t());
    if (g == 1) return GroupElement(std::move(c), modulus);
  }
  throw Error(ErrorCode::kRetryExhausted, "no unit found while sampling Z*_N");
}

GroupElement mod_exp(const GroupElement& base, const mpz_class& exponent,
                     const RsaModulus& modulus) {
  if (!(base.modulus() == modulus)) {
    throw Error(ErrorCode::kModulusMismatch, "base is bound to a different modulus");
  }
  if (exponent < 0) {
    throw Error(ErrorCode::kInvalidArgument, "negative exponent");
  }
  mpz_class out;
  mpz_powm(out.get_mpz_t(), base.value().get_mpz_t(), exponent.get_mpz_t(),
           modulus.n().get_mpz_t());
  return GroupElement(std::move(out), modulus);
}

}  // namespace sls
