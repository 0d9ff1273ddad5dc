#pragma once

#include <array>
#include <cstdint>

#include "sls/bytes.hpp"

namespace sls {

using BeaconSeed = std::array<uint8_t, 32>;

// One beacon output (round, r, timestamp). timestamp is seconds since epoch.
struct BeaconValue {
  uint64_t round = 0;
  std::array<uint8_t, 32> value{};
  int64_t timestamp = 0;

  friend bool operator==(const BeaconValue&, const BeaconValue&) = default;
};

// value_k = H("SLS-v1/beacon" || lp(seed) || lp(u64be(k))).
std::array<uint8_t, 32> beacon_chain_value(const BeaconSeed& seed, uint64_t round);

// Local stand-in for a public randomness beacon. Round k is published at
// genesis + k * period and never before.
class Beacon {
 public:
  Beacon(const BeaconSeed& seed, uint64_t period_seconds, int64_t genesis_seconds);

  const BeaconSeed& seed() const { return seed_; }
  uint64_t period() const { return period_; }
  int64_t genesis() const { return genesis_; }

  int64_t timestamp(uint64_t round) const;
  // Latest round whose timestamp is <= now; throws kFutureRound before genesis.
  uint64_t current_round(int64_t now_seconds) const;

  // Throws Error(kFutureRound) if the round is not published at `now_seconds`.
  BeaconValue get(uint64_t round, int64_t now_seconds) const;
  BeaconValue get(uint64_t round) const;

  // True iff bv.value matches the chain at bv.round.
  bool verify(const BeaconValue& bv) const;

 private:
  BeaconSeed seed_;
  uint64_t period_;
  int64_t genesis_;
};

// Round 0 is published at the current wall-clock second.
Beacon beacon_init(const BeaconSeed& seed, uint64_t period_seconds);

int64_t unix_now();

}  // namespace sls
