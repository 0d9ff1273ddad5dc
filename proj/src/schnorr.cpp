#include "sls/schnorr.hpp"

#include <algorithm>
#include <array>

#include <sodium.h>

#include "sls/error.hpp"
#include "sls/hash.hpp"
#include "sls/numtheory.hpp"

namespace sls::schnorr {

namespace {

constexpr size_t kMaxFieldBytes = 4096;
constexpr size_t kNonceBytes = crypto_aead_xchacha20poly1305_ietf_NPUBBYTES;
constexpr size_t kKeyBytes = crypto_aead_xchacha20poly1305_ietf_KEYBYTES;
constexpr size_t kTagBytes = crypto_aead_xchacha20poly1305_ietf_ABYTES;
static_assert(kKeyBytes == 32);

mpz_class powm(const mpz_class& base, const mpz_class& exp, const mpz_class& mod) {
  mpz_class out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return out;
}

mpz_class reduce_digest(ByteView digest, const mpz_class& order) {
  mpz_class v = decode_mpz(digest);
  mpz_mod(v.get_mpz_t(), v.get_mpz_t(), order.get_mpz_t());
  return v;
}

// 512 bits of hash output reduced mod s; the counter skips a zero nonce.
mpz_class derive_nonce(const Group& group, const mpz_class& sk, ByteView message) {
  const Bytes sk_bytes = encode_mpz_fixed(sk, group.scalar_bytes());
  for (uint64_t counter = 0;; ++counter) {
    Bytes wide;
    for (uint8_t half = 0; half < 2; ++half) {
      Bytes ctr;
      append_u64be(counter, &ctr);
      ctr.push_back(half);
      const Digest d = domain_hash("schnorr-nonce", {sk_bytes, message, ctr});
      wide.insert(wide.end(), d.begin(), d.end());
    }
    mpz_class k = reduce_digest(wide, group.order);
    if (k != 0) return k;
  }
}

mpz_class challenge(const PublicKey& pk, const mpz_class& commitment, ByteView message) {
  const size_t width = pk.group.element_bytes();
  const Bytes r = encode_mpz_fixed(commitment, width);
  const Bytes h = encode_mpz_fixed(pk.h, width);
  const Digest d = domain_hash("schnorr-challenge", {r, h, message});
  return reduce_digest(d, pk.group.order);
}

std::array<uint8_t, kKeyBytes> kem_key(const Group& group, const mpz_class& ephemeral,
                                       const mpz_class& shared) {
  const size_t width = group.element_bytes();
  const Bytes r = encode_mpz_fixed(ephemeral, width);
  const Bytes s = encode_mpz_fixed(shared, width);
  return domain_hash("elgamal-kem", {r, s});
}

}  // namespace

void Group::validate() const {
  if (order < 2 || p <= order || g <= 1 || g >= p) {
    throw Error(ErrorCode::kMalformedParams, "schnorr group values out of range");
  }
  if (!is_probable_prime(order) || !is_probable_prime(p)) {
    throw Error(ErrorCode::kMalformedParams, "schnorr group modulus or order not prime");
  }
  if (!mpz_divisible_p(mpz_class(p - 1).get_mpz_t(), order.get_mpz_t())) {
    throw Error(ErrorCode::kMalformedParams, "group order does not divide p - 1");
  }
  if (powm(g, order, p) != 1) {
    throw Error(ErrorCode::kMalformedParams, "generator does not have the group order");
  }
}

GroupSizes sizes_for_lambda(unsigned lambda) {
  const unsigned order_bits = std::min(2 * lambda - 2, 256U);
  return {order_bits, std::max(2 * lambda, 2 * order_bits)};
}

Group generate_group(const GroupSizes& sizes, RandomSource& rng) {
  if (sizes.order_bits < 3 || sizes.modulus_bits <= sizes.order_bits + 1) {
    throw Error(ErrorCode::kInvalidArgument, "schnorr group sizes too small");
  }
  const size_t limit = kPrimeAttemptsPerBit * sizes.modulus_bits;
  for (int restart = 0; restart < 8; ++restart) {
    const mpz_class s = gen_prime(sizes.order_bits, rng);
    mpz_class lo;  // 2^(bits-1)
    mpz_ui_pow_ui(lo.get_mpz_t(), 2, sizes.modulus_bits - 1);
    const mpz_class hi = 2 * lo - 1;
    // p = k*s + 1 with k even and p in [lo, hi].
    const mpz_class k_lo = (lo - 1 + 2 * s - 1) / (2 * s);
    const mpz_class k_hi = (hi - 1) / (2 * s);
    if (k_hi < k_lo) continue;
    for (size_t attempt = 0; attempt < limit; ++attempt) {
      const mpz_class k = 2 * random_range(rng, k_lo, k_hi);
      const mpz_class p = k * s + 1;
      if (!is_probable_prime(p, rng)) continue;
      for (;;) {
        const mpz_class a = random_range(rng, 2, p - 2);
        mpz_class g = powm(a, k, p);
        if (g != 1) return Group{p, s, g};
      }
    }
  }
  throw Error(ErrorCode::kRetryExhausted, "no schnorr group found");
}

Bytes PublicKey::encode() const {
  Bytes out;
  append_sized(encode_mpz(group.p), &out);
  append_sized(encode_mpz(group.order), &out);
  append_sized(encode_mpz(group.g), &out);
  append_sized(encode_mpz(h), &out);
  return out;
}

PublicKey PublicKey::decode(ByteView bytes) {
  size_t offset = 0;
  PublicKey pk;
  pk.group.p = decode_mpz(read_sized(bytes, &offset, kMaxFieldBytes));
  pk.group.order = decode_mpz(read_sized(bytes, &offset, kMaxFieldBytes));
  pk.group.g = decode_mpz(read_sized(bytes, &offset, kMaxFieldBytes));
  pk.h = decode_mpz(read_sized(bytes, &offset, kMaxFieldBytes));
  if (offset != bytes.size()) {
    throw Error(ErrorCode::kParse, "trailing bytes after public key");
  }
  pk.group.validate();
  if (pk.h <= 1 || pk.h >= pk.group.p || powm(pk.h, pk.group.order, pk.group.p) != 1) {
    throw Error(ErrorCode::kMalformedParams, "public key is not a subgroup element");
  }
  return pk;
}

mpz_class derive_public(const Group& group, const mpz_class& sk) {
  return powm(group.g, sk, group.p);
}

Keypair generate_keypair(const Group& group, RandomSource& rng) {
  return keypair_from_secret(group, random_range(rng, 1, group.order - 1));
}

Keypair keypair_from_secret(const Group& group, const mpz_class& sk) {
  if (sk < 1 || sk >= group.order) {
    throw Error(ErrorCode::kInvalidArgument, "secret scalar out of range [1, s-1]");
  }
  return Keypair{PublicKey{group, derive_public(group, sk)}, sk};
}

Bytes sign(const PublicKey& pk, const mpz_class& sk, ByteView message) {
  const Group& grp = pk.group;
  const mpz_class k = derive_nonce(grp, sk, message);
  const mpz_class r = powm(grp.g, k, grp.p);
  const mpz_class e = challenge(pk, r, message);
  mpz_class z = k + e * sk;
  mpz_mod(z.get_mpz_t(), z.get_mpz_t(), grp.order.get_mpz_t());

  const size_t width = grp.scalar_bytes();
  Bytes sigma = encode_mpz_fixed(e, width);
  const Bytes z_bytes = encode_mpz_fixed(z, width);
  sigma.insert(sigma.end(), z_bytes.begin(), z_bytes.end());
  return sigma;
}

bool verify(const PublicKey& pk, ByteView message, ByteView sigma) {
  const Group& grp = pk.group;
  const size_t width = grp.scalar_bytes();
  if (sigma.size() != 2 * width) return false;
  const mpz_class e = decode_mpz(sigma.first(width));
  const mpz_class z = decode_mpz(sigma.subspan(width));
  if (e >= grp.order || z >= grp.order) return false;

  // R = g^z * h^(s - e) = g^(z - e*sk)
  const mpz_class gz = powm(grp.g, z, grp.p);
  const mpz_class he = powm(pk.h, grp.order - e, grp.p);
  mpz_class r = gz * he;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), grp.p.get_mpz_t());
  return challenge(pk, r, message) == e;
}

Bytes encrypt(const PublicKey& pk, ByteView plaintext, RandomSource& rng) {
  const Group& grp = pk.group;
  const mpz_class k = random_range(rng, 1, grp.order - 1);
  const mpz_class r = powm(grp.g, k, grp.p);
  mpz_class shared = powm(pk.h, k, grp.p);
  auto key = kem_key(grp, r, shared);
  wipe(shared);

  Bytes out = encode_mpz_fixed(r, grp.element_bytes());
  const size_t header = out.size();
  std::array<uint8_t, kNonceBytes> nonce{};
  rng.fill(nonce);
  out.insert(out.end(), nonce.begin(), nonce.end());
  out.resize(header + kNonceBytes + plaintext.size() + kTagBytes);

  unsigned long long ct_len = 0;
  crypto_aead_xchacha20poly1305_ietf_encrypt(
      out.data() + header + kNonceBytes, &ct_len, plaintext.data(), plaintext.size(),
      out.data(), header, nullptr, nonce.data(), key.data());
  sodium_memzero(key.data(), key.size());
  out.resize(header + kNonceBytes + ct_len);
  return out;
}

Bytes decrypt(const PublicKey& pk, const mpz_class& sk, ByteView ciphertext) {
  const Group& grp = pk.group;
  const size_t header = grp.element_bytes();
  if (ciphertext.size() < header + kNonceBytes + kTagBytes) {
    throw Error(ErrorCode::kDecryptionFailed, "ciphertext too short");
  }
  const mpz_class r = decode_mpz(ciphertext.first(header));
  if (r <= 1 || r >= grp.p) {
    throw Error(ErrorCode::kDecryptionFailed, "ephemeral key out of range");
  }
  mpz_class shared = powm(r, sk, grp.p);
  auto key = kem_key(grp, r, shared);
  wipe(shared);

  const ByteView nonce = ciphertext.subspan(header, kNonceBytes);
  const ByteView body = ciphertext.subspan(header + kNonceBytes);
  Bytes out(body.size() - kTagBytes);
  unsigned long long pt_len = 0;
  const int rc = crypto_aead_xchacha20poly1305_ietf_decrypt(
      out.data(), &pt_len, nullptr, body.data(), body.size(), ciphertext.data(), header,
      nonce.data(), key.data());
  sodium_memzero(key.data(), key.size());
  if (rc != 0) {
    throw Error(ErrorCode::kDecryptionFailed, "authentication failed");
  }
  out.resize(pt_len);
  return out;
}

}  // namespace sls::schnorr
