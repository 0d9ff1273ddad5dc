#include "sls/sls.hpp"

#include <limits>

#include "sls/error.hpp"

namespace sls {

const char* to_string(Verdict v) {
  return v == Verdict::kAccept ? "accept" : "reject";
}

const char* to_string(Freshness f) {
  return f == Freshness::kConvincing ? "convincing" : "expired";
}

SlsSetup sls_setup_from(TlpkeSetup setup, SetupMode mode) {
  SlsSetup out{SlsPublicParams{std::move(setup.pp)}, SlsSecretKey{setup.keypair.sk},
               std::nullopt};
  wipe(setup.keypair.sk);
  if (mode == SetupMode::kTest) {
    out.trapdoor = std::move(setup.trapdoor);
  } else {
    setup.trapdoor.wipe();
  }
  return out;
}

SlsSetup sls_setup(const SecurityConfig& cfg, TimeBound time_bound, RandomSource& rng,
                   SetupMode mode) {
  return sls_setup_from(tlpke_setup(cfg, time_bound, rng), mode);
}

Digest message_digest(ByteView message, const BeaconValue& beacon) {
  return domain_hash("", {message, beacon.value});
}

namespace {

ShortLivedSignature sign_digest(const SlsPublicParams& pp, ByteView message,
                                const BeaconValue& beacon, const mpz_class& sk) {
  const Digest m = message_digest(message, beacon);
  return ShortLivedSignature{schnorr::sign(pp.sig_pk(), sk, m), beacon};
}

}  // namespace

ShortLivedSignature sls_sign(const SlsPublicParams& pp, ByteView message,
                             const BeaconValue& beacon, const SlsSecretKey& key) {
  const schnorr::Group& group = pp.sig_pk().group;
  if (key.sk < 1 || key.sk >= group.order ||
      schnorr::derive_public(group, key.sk) != pp.sig_pk().h) {
    throw Error(ErrorCode::kKeyMismatch, "secret key does not match sig_pk");
  }
  return sign_digest(pp, message, beacon, key.sk);
}

ShortLivedSignature sls_forge_sign(const SlsPublicParams& pp, ByteView message,
                                   const BeaconValue& beacon) {
  TlpkeEvalOutput extracted = tlpke_eval(pp.tlpke);
  ShortLivedSignature sig = sign_digest(pp, message, beacon, extracted.recovered_sk);
  wipe(extracted.recovered_sk);
  return sig;
}

Verdict sls_verify(const SlsPublicParams& pp, ByteView message, const BeaconValue& beacon,
                   const ShortLivedSignature& sig) {
  if (sig.beacon.value != beacon.value) return Verdict::kReject;
  const Digest m = message_digest(message, beacon);
  return schnorr::verify(pp.sig_pk(), m, sig.sigma) ? Verdict::kAccept : Verdict::kReject;
}

Freshness sls_check_freshness(const FreshnessContext& ctx, const SlsPublicParams& pp) {
  if (!ctx.calibrated_rate) {
    throw Error(ErrorCode::kMissingCalibration, "no calibrated squaring rate");
  }
  const double rate = *ctx.calibrated_rate;
  if (!(rate > 0) || rate == std::numeric_limits<double>::infinity()) {
    throw Error(ErrorCode::kInvalidArgument, "calibrated rate must be positive and finite");
  }
  if (ctx.observed_time < ctx.beacon_time) {
    throw Error(ErrorCode::kInvalidArgument, "observation precedes the beacon round");
  }
  // Exact: elapsed_ns * rate >= T * 1e9.
  const auto elapsed_ns = (ctx.observed_time - ctx.beacon_time).count();
  mpq_class squarings(mpz_class(static_cast<long>(elapsed_ns)));
  squarings *= mpq_class(rate);
  squarings /= mpq_class(1'000'000'000);
  const mpz_class t = static_cast<unsigned long>(pp.time_bound());
  return squarings < mpq_class(t) ? Freshness::kConvincing : Freshness::kExpired;
}

}  // namespace sls
