#pragma once

#include <chrono>
#include <optional>

#include "sls/beacon.hpp"
#include "sls/hash.hpp"
#include "sls/tlpke.hpp"

namespace sls {

// Same layout as the time-lock encryption params; pk verifies signatures.
struct SlsPublicParams {
  TlpkePublicParams tlpke;

  const schnorr::PublicKey& sig_pk() const { return tlpke.enc_pk; }
  TimeBound time_bound() const { return tlpke.time_bound; }

  friend bool operator==(const SlsPublicParams& a, const SlsPublicParams& b) {
    return a.tlpke.modulus == b.tlpke.modulus &&
           a.tlpke.time_bound == b.tlpke.time_bound &&
           a.tlpke.puzzle_input == b.tlpke.puzzle_input &&
           a.tlpke.enc_pk == b.tlpke.enc_pk && a.tlpke.masked_sk == b.tlpke.masked_sk;
  }
};

struct SlsSecretKey {
  mpz_class sk;
};

struct ShortLivedSignature {
  Bytes sigma;
  BeaconValue beacon;

  friend bool operator==(const ShortLivedSignature&, const ShortLivedSignature&) = default;
};

enum class SetupMode {
  kProduction,  // trapdoor wiped after ek is computed
  kTest,        // trapdoor returned for oracle checks
};

struct SlsSetup {
  SlsPublicParams pp;
  SlsSecretKey key;
  std::optional<TrapdoorSecret> trapdoor;
};

enum class Verdict { kAccept, kReject };
enum class Freshness { kConvincing, kExpired };

const char* to_string(Verdict v);
const char* to_string(Freshness f);

using TimePoint = std::chrono::sys_time<std::chrono::nanoseconds>;

struct FreshnessContext {
  TimePoint beacon_time;    // T0
  TimePoint observed_time;  // when the signature was seen
  std::optional<double> calibrated_rate;  // squarings per second
};

SlsSetup sls_setup(const SecurityConfig& cfg, TimeBound time_bound, RandomSource& rng,
                   SetupMode mode = SetupMode::kProduction);
SlsSetup sls_setup_from(TlpkeSetup setup, SetupMode mode);

// H("SLS-v1" || u64be(|m|) || m || u64be(|r|) || r).
Digest message_digest(ByteView message, const BeaconValue& beacon);

ShortLivedSignature sls_sign(const SlsPublicParams& pp, ByteView message,
                             const BeaconValue& beacon, const SlsSecretKey& key);

// Recovers sk through tlpke_eval (T sequential squarings), then signs.
ShortLivedSignature sls_forge_sign(const SlsPublicParams& pp, ByteView message,
                                   const BeaconValue& beacon);

Verdict sls_verify(const SlsPublicParams& pp, ByteView message, const BeaconValue& beacon,
                   const ShortLivedSignature& sig);

// Advisory: convincing iff (observed - beacon) * rate < T.
Freshness sls_check_freshness(const FreshnessContext& ctx, const SlsPublicParams& pp);

}  // namespace sls
