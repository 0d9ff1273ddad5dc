#include "sls/tlpke.hpp"

#include "sls/error.hpp"

namespace sls {

namespace {

constexpr int kSetupRetries = 8;

}  // namespace

void TlpkePublicParams::validate() const {
  if (!(puzzle_input.modulus() == modulus)) {
    throw Error(ErrorCode::kMalformedParams, "puzzle input bound to another modulus");
  }
  if (masked_sk < 0 || masked_sk >= modulus.n()) {
    throw Error(ErrorCode::kMalformedParams, "ek outside [0, N-1]");
  }
  if (enc_pk.group.order >= modulus.n()) {
    throw Error(ErrorCode::kParameterSize, "inner scalar order is not below N");
  }
  if (time_bound > kMaxTimeBound) {
    throw Error(ErrorCode::kMalformedParams, "time bound exceeds 2^63 - 1");
  }
}

mpz_class mask_secret(const mpz_class& sk, const GroupElement& y) {
  mpz_class ek = sk + y.value();
  mpz_mod(ek.get_mpz_t(), ek.get_mpz_t(), y.modulus().n().get_mpz_t());
  return ek;
}

mpz_class unmask_secret(const mpz_class& ek, const GroupElement& y) {
  mpz_class sk = ek - y.value();
  mpz_mod(sk.get_mpz_t(), sk.get_mpz_t(), y.modulus().n().get_mpz_t());
  return sk;
}

TlpkeSetup tlpke_assemble(RsaModulus modulus, TrapdoorSecret trapdoor,
                          TimeBound time_bound, GroupElement x, InnerKeypair keypair) {
  if (keypair.pk.group.order >= modulus.n()) {
    throw Error(ErrorCode::kParameterSize, "inner scalar order is not below N");
  }
  const RswPublicParams rsw_pp(modulus, time_bound);
  const RswOutput out = rsw_td_eval(rsw_pp, trapdoor, x);
  mpz_class ek = mask_secret(keypair.sk, out.y);
  TlpkePublicParams pp{std::move(modulus), time_bound, std::move(x), keypair.pk,
                       std::move(ek)};
  pp.validate();
  return TlpkeSetup{std::move(pp), std::move(trapdoor), std::move(keypair)};
}

TlpkeSetup tlpke_setup(const SecurityConfig& cfg, TimeBound time_bound,
                       RandomSource& rng) {
  const schnorr::GroupSizes sizes = schnorr::sizes_for_lambda(cfg.lambda);
  for (int attempt = 0; attempt < kSetupRetries; ++attempt) {
    auto [rsw_pp, trapdoor] = rsw_setup(cfg, time_bound, rng);
    GroupElement x = rsw_sample(rsw_pp, rng);
    schnorr::Group group = schnorr::generate_group(sizes, rng);
    if (group.order >= rsw_pp.modulus.n()) continue;
    InnerKeypair keypair = schnorr::generate_keypair(group, rng);
    return tlpke_assemble(rsw_pp.modulus, std::move(trapdoor), time_bound, std::move(x),
                          std::move(keypair));
  }
  throw Error(ErrorCode::kParameterSize, "could not fit the inner scalar field below N");
}

TlpkeEvalOutput tlpke_eval(const TlpkePublicParams& pp) {
  RswOutput out = rsw_eval(pp.rsw(), pp.puzzle_input);
  mpz_class sk = unmask_secret(pp.masked_sk, out.y);
  if (sk >= pp.enc_pk.group.order) {
    throw Error(ErrorCode::kMalformedParams, "recovered key is outside the scalar field");
  }
  return TlpkeEvalOutput{std::move(out.y), std::move(sk)};
}

Bytes encode_plaintext(ByteView message, const GroupElement& x) {
  if (message.size() > UINT32_MAX) {
    throw Error(ErrorCode::kOversizeMessage, "message length exceeds u32");
  }
  Bytes out;
  append_u32be(static_cast<uint32_t>(message.size()), &out);
  out.insert(out.end(), message.begin(), message.end());
  const Bytes xb = encode_mpz(x.value());
  out.insert(out.end(), xb.begin(), xb.end());
  return out;
}

DecodedPlaintext decode_plaintext(ByteView plaintext) {
  size_t offset = 0;
  const uint32_t len = read_u32be(plaintext, &offset);
  if (plaintext.size() - offset < len) {
    throw Error(ErrorCode::kDecryptionFailed, "plaintext shorter than its length prefix");
  }
  DecodedPlaintext out;
  out.message.assign(plaintext.begin() + static_cast<std::ptrdiff_t>(offset),
                     plaintext.begin() + static_cast<std::ptrdiff_t>(offset + len));
  out.x = decode_mpz(plaintext.subspan(offset + len));
  return out;
}

TlpkeCiphertext tlpke_encrypt(const TlpkePublicParams& pp, ByteView message,
                              RandomSource& rng, const TlpkeOptions& options) {
  if (message.size() > options.max_message_bytes) {
    throw Error(ErrorCode::kOversizeMessage, "message exceeds configured maximum");
  }
  const Bytes plaintext = encode_plaintext(message, pp.puzzle_input);
  return TlpkeCiphertext{schnorr::encrypt(pp.enc_pk, plaintext, rng)};
}

Bytes tlpke_decrypt(const TlpkePublicParams& pp, const mpz_class& sk,
                    const std::optional<GroupElement>& y, const TlpkeCiphertext& ct) {
  if (sk < 1 || sk >= pp.enc_pk.group.order) {
    throw Error(ErrorCode::kDecryptionFailed, "secret key outside the scalar field");
  }
  if (y) {
    if (!(y->modulus() == pp.modulus) ||
        unmask_secret(pp.masked_sk, *y) >= pp.enc_pk.group.order) {
      throw Error(ErrorCode::kKeyMismatch, "y does not unmask ek into the scalar field");
    }
  }
  DecodedPlaintext decoded =
      decode_plaintext(schnorr::decrypt(pp.enc_pk, sk, ct.payload));
  if (decoded.x != pp.puzzle_input.value()) {
    throw Error(ErrorCode::kBindingMismatch, "ciphertext was made for a different puzzle");
  }
  return std::move(decoded.message);
}

}  // namespace sls
