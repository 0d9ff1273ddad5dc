#pragma once

#include <cstddef>

#include <gmpxx.h>

#include "sls/bytes.hpp"
#include "sls/random.hpp"

// Prime-order subgroup of Z*_P with a single-scalar secret key. Provides the
// deterministic Schnorr signature used for short-lived signatures and the
// ElGamal-KEM + XChaCha20-Poly1305 hybrid used for time-lock encryption.
namespace sls::schnorr {

struct Group {
  mpz_class p;      // prime modulus
  mpz_class order;  // prime s dividing p - 1
  mpz_class g;      // generator of the order-s subgroup

  size_t element_bytes() const { return byte_length(p); }
  size_t scalar_bytes() const { return byte_length(order); }

  // Throws Error(kMalformedParams) if any group property fails.
  void validate() const;

  friend bool operator==(const Group&, const Group&) = default;
};

struct GroupSizes {
  unsigned order_bits;
  unsigned modulus_bits;
};

// Sizing used at setup for a given per-prime lambda: the scalar order always
// has fewer bits than the 2*lambda-bit RSA modulus.
GroupSizes sizes_for_lambda(unsigned lambda);

Group generate_group(const GroupSizes& sizes, RandomSource& rng);

struct PublicKey {
  Group group;
  mpz_class h;  // g^sk mod p

  // lp(p) || lp(s) || lp(g) || lp(h), minimal big-endian integers.
  Bytes encode() const;
  // Validates group and key; throws Error(kParse / kMalformedParams).
  static PublicKey decode(ByteView bytes);

  friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

struct Keypair {
  PublicKey pk;
  mpz_class sk;
};

mpz_class derive_public(const Group& group, const mpz_class& sk);
Keypair generate_keypair(const Group& group, RandomSource& rng);
Keypair keypair_from_secret(const Group& group, const mpz_class& sk);

// sigma = e || z, each scalar_bytes() wide. The nonce is derived from sk and
// the message, so signing is a function of (sk, message).
Bytes sign(const PublicKey& pk, const mpz_class& sk, ByteView message);
bool verify(const PublicKey& pk, ByteView message, ByteView sigma);

// R || nonce(24) || AEAD ciphertext.
Bytes encrypt(const PublicKey& pk, ByteView plaintext, RandomSource& rng);
// Throws Error(kDecryptionFailed) on any authentication or format failure.
Bytes decrypt(const PublicKey& pk, const mpz_class& sk, ByteView ciphertext);

}  // namespace sls::schnorr
