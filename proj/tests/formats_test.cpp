#include "doctest.h"
#include "sls/error.hpp"
#include "sls/formats.hpp"

using namespace sls;
using namespace sls::formats;

namespace {

SlsSetup make_setup(uint64_t seed, unsigned lambda, TimeBound t) {
  SeededRandom rng(seed);
  return sls_setup(SecurityConfig(lambda), t, rng, SetupMode::kTest);
}

}  // namespace

TEST_CASE("params roundtrip byte-exactly across sizes") {
  for (uint64_t seed = 1; seed <= 6; ++seed) {
    const SlsSetup s = make_setup(seed, 16 + 8 * static_cast<unsigned>(seed), seed * 1000);
    const std::string text = serialize_params(s.pp);
    const SlsPublicParams parsed = parse_params(text);
    CHECK(parsed == s.pp);
    CHECK(serialize_params(parsed) == text);
  }
}

TEST_CASE("params layout and rejection of malformed input") {
  const SlsSetup s = make_setup(9, 16, 1024);
  const std::string text = serialize_params(s.pp);
  CHECK(text.rfind("slsparams-v1\nn: ", 0) == 0);
  CHECK(text.find("\nt: 400\n") != std::string::npos);

  auto replace = [&](const std::string& from, const std::string& to) {
    std::string t = text;
    t.replace(t.find(from), from.size(), to);
    return t;
  };
  CHECK_THROWS_AS(parse_params(replace("slsparams-v1", "slsparams-v2")), Error);
  CHECK_THROWS_AS(parse_params(replace("\nt: 400", "\nt: 0400")), Error);
  CHECK_THROWS_AS(parse_params(replace("\nt: 400", "\nt: 4G0")), Error);
  CHECK_THROWS_AS(parse_params(replace("\nx: ", "\nx: 0")), Error);
  CHECK_THROWS_AS(parse_params(text + "extra: 1\n"), Error);
  // ek >= N
  const std::string n_hex = mpz_to_hex(s.pp.tlpke.modulus.n());
  CHECK_THROWS_AS(parse_params(replace("\nek: " + mpz_to_hex(s.pp.tlpke.masked_sk),
                                       "\nek: " + n_hex)),
                  Error);
  try {
    parse_params("garbage");
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
  }
}

TEST_CASE("secret key, trapdoor, signature, beacon and calibration roundtrip") {
  const SlsSetup s = make_setup(10, 20, 64);
  CHECK(parse_secret_key(serialize_secret_key(s.key)).sk == s.key.sk);

  const TrapdoorSecret td = parse_trapdoor(serialize_trapdoor(*s.trapdoor));
  CHECK(td.p == s.trapdoor->p);
  CHECK(td.phi == s.trapdoor->phi);

  BeaconSeed seed{};
  seed.fill(0xab);
  const Beacon beacon(seed, 15, 1'650'000'000);
  const Beacon parsed_beacon = parse_beacon(serialize_beacon(beacon));
  CHECK(parsed_beacon.seed() == seed);
  CHECK(parsed_beacon.period() == 15);
  CHECK(parsed_beacon.genesis() == 1'650'000'000);
  CHECK(serialize_beacon(parsed_beacon) == serialize_beacon(beacon));

  const BeaconValue bv = beacon.get(3, 1'700'000'000);
  const ShortLivedSignature sig = sls_sign(s.pp, Bytes{1, 2}, bv, s.key);
  const std::string sig_text = serialize_signature(sig);
  CHECK(parse_signature(sig_text) == sig);
  CHECK(serialize_signature(parse_signature(sig_text)) == sig_text);
  CHECK(sig_text.find("beacon_round: 3\n") != std::string::npos);

  const bench::CalibrationResult cal{123456.789, 32, 65536};
  const auto cal2 = parse_calibration(serialize_calibration(cal));
  CHECK(cal2.rate == cal.rate);
  CHECK(cal2.lambda == 32);
  CHECK(cal2.sample_t == 65536);
}

TEST_CASE("two-line beacon file is accepted with an epoch genesis") {
  const std::string text =
      "seed: " + std::string(64, 'c') + "\nperiod: 30\n";
  const Beacon b = parse_beacon(text);
  CHECK(b.genesis() == 0);
  CHECK(b.period() == 30);
  CHECK_THROWS_AS(parse_beacon("seed: abcd\nperiod: 30\n"), Error);
  CHECK_THROWS_AS(parse_beacon("seed: " + std::string(64, 'c') + "\nperiod: 0\n"), Error);
}

TEST_CASE("signature parser rejects bad fields") {
  const std::string good =
      "slssig-v1\nsigma: 00ff\nbeacon_round: 1\nbeacon_value: " + std::string(64, '0') +
      "\nbeacon_time: 5\n";
  CHECK_NOTHROW(parse_signature(good));
  std::string upper = good;
  upper.replace(upper.find("00ff"), 4, "00FF");
  CHECK_THROWS_AS(parse_signature(upper), Error);
  std::string short_value = good;
  short_value.replace(short_value.find(std::string(64, '0')), 64, std::string(62, '0'));
  CHECK_THROWS_AS(parse_signature(short_value), Error);
  std::string bad_round = good;
  bad_round.replace(bad_round.find("beacon_round: 1"), 15, "beacon_round: -1");
  CHECK_THROWS_AS(parse_signature(bad_round), Error);
}
