#include "doctest.h"
#include "sls/beacon.hpp"
#include "sls/error.hpp"

#include <set>

using namespace sls;

namespace {

BeaconSeed seed_of(uint8_t b) {
  BeaconSeed s{};
  s.fill(b);
  return s;
}

constexpr int64_t kGenesis = 1'700'000'000;

}  // namespace

TEST_CASE("same seed gives identical streams; different seeds differ") {
  const Beacon a(seed_of(1), 30, kGenesis), b(seed_of(1), 30, kGenesis);
  const Beacon c(seed_of(2), 30, kGenesis);
  for (uint64_t k = 0; k < 50; ++k) {
    CHECK(a.get(k, kGenesis + 30 * 50) == b.get(k, kGenesis + 30 * 50));
    CHECK(a.get(k, kGenesis + 30 * 50).value != c.get(k, kGenesis + 30 * 50).value);
  }
}

TEST_CASE("rounds 0..10 are distinct and timestamps are t0 + 30k") {
  const Beacon b(seed_of(3), 30, kGenesis);
  std::set<std::array<uint8_t, 32>> seen;
  for (uint64_t k = 0; k <= 10; ++k) {
    const BeaconValue v = b.get(k, kGenesis + 300);
    seen.insert(v.value);
    CHECK(v.timestamp == kGenesis + 30 * static_cast<int64_t>(k));
    CHECK(v.round == k);
  }
  CHECK(seen.size() == 11);
}

TEST_CASE("10^4 rounds: unique values, strictly increasing timestamps") {
  const Beacon b(seed_of(4), 1, 0);
  std::set<std::array<uint8_t, 32>> seen;
  int64_t last = -1;
  for (uint64_t k = 0; k < 10'000; ++k) {
    seen.insert(beacon_chain_value(b.seed(), k));
    CHECK(b.timestamp(k) > last);
    last = b.timestamp(k);
  }
  CHECK(seen.size() == 10'000);
}

TEST_CASE("round 0 is the seed-derived genesis value") {
  const Beacon b(seed_of(5), 10, kGenesis);
  CHECK(b.get(0, kGenesis).value == beacon_chain_value(seed_of(5), 0));
}

TEST_CASE("future rounds are unavailable") {
  const Beacon b(seed_of(6), 30, kGenesis);
  CHECK(b.current_round(kGenesis + 95) == 3);
  CHECK_NOTHROW(b.get(3, kGenesis + 95));
  try {
    b.get(4, kGenesis + 95);
    FAIL("expected future round");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kFutureRound);
  }
  CHECK_THROWS_AS(b.get(0, kGenesis - 1), Error);
  const Beacon live = beacon_init(seed_of(6), 3600);
  CHECK_NOTHROW(live.get(0));
  CHECK_THROWS_AS(live.get(1000), Error);
}

TEST_CASE("verify: honest values pass, bit flips and wrong rounds fail") {
  const Beacon b(seed_of(7), 1, 0);
  for (uint64_t k = 0; k <= 100; ++k) {
    CHECK(b.verify(b.get(k, 1000)));
  }
  BeaconValue v = b.get(10, 1000);
  v.value[5] ^= 0x01;
  CHECK_FALSE(b.verify(v));
  BeaconValue wrong_round = b.get(10, 1000);
  wrong_round.round = 11;
  CHECK_FALSE(b.verify(wrong_round));
  const Beacon other(seed_of(8), 1, 0);
  CHECK_FALSE(other.verify(b.get(10, 1000)));
}

TEST_CASE("period must be positive") {
  CHECK_THROWS_AS(Beacon(seed_of(1), 0, 0), Error);
}
