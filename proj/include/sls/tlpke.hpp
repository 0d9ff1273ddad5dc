#pragma once

#include <cstddef>
#include <optional>

#include "sls/rsw.hpp"
#include "sls/schnorr.hpp"

namespace sls {

// pp = (N, T, x, pk, ek).
struct TlpkePublicParams {
  RsaModulus modulus;
  TimeBound time_bound;
  GroupElement puzzle_input;
  schnorr::PublicKey enc_pk;
  mpz_class masked_sk;

  RswPublicParams rsw() const { return RswPublicParams(modulus, time_bound); }
  // x bound to N, ek in [0, N-1], inner scalar order below N.
  void validate() const;
};

using InnerKeypair = schnorr::Keypair;

struct TlpkeCiphertext {
  Bytes payload;
};

struct TlpkeEvalOutput {
  GroupElement y;
  mpz_class recovered_sk;
};

struct TlpkeSetup {
  TlpkePublicParams pp;
  TrapdoorSecret trapdoor;
  InnerKeypair keypair;
};

struct TlpkeOptions {
  size_t max_message_bytes = size_t{1} << 20;
};

// (sk + y) mod N and its inverse.
mpz_class mask_secret(const mpz_class& sk, const GroupElement& y);
mpz_class unmask_secret(const mpz_class& ek, const GroupElement& y);

TlpkeSetup tlpke_setup(const SecurityConfig& cfg, TimeBound time_bound,
                       RandomSource& rng);

// Builds pp from already generated parts; y comes from the trapdoor path.
TlpkeSetup tlpke_assemble(RsaModulus modulus, TrapdoorSecret trapdoor,
                          TimeBound time_bound, GroupElement x, InnerKeypair keypair);

// Anyone can run this: T sequential squarings, then sk = ek - y.
TlpkeEvalOutput tlpke_eval(const TlpkePublicParams& pp);

TlpkeCiphertext tlpke_encrypt(const TlpkePublicParams& pp, ByteView message,
                              RandomSource& rng, const TlpkeOptions& options = {});

// When y is given, (ek - y) mod N must land in the scalar field.
Bytes tlpke_decrypt(const TlpkePublicParams& pp, const mpz_class& sk,
                    const std::optional<GroupElement>& y, const TlpkeCiphertext& ct);

// u32be(|M|) || M || x (minimal big-endian).
Bytes encode_plaintext(ByteView message, const GroupElement& x);

struct DecodedPlaintext {
  Bytes message;
  mpz_class x;
};
DecodedPlaintext decode_plaintext(ByteView plaintext);

}  // namespace sls
