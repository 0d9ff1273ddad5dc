#include "sls/beacon.hpp"

#include <chrono>
#include <limits>

#include "sls/error.hpp"
#include "sls/hash.hpp"

namespace sls {

std::array<uint8_t, 32> beacon_chain_value(const BeaconSeed& seed, uint64_t round) {
  Bytes k;
  append_u64be(round, &k);
  return domain_hash("beacon", {seed, k});
}

Beacon::Beacon(const BeaconSeed& seed, uint64_t period_seconds, int64_t genesis_seconds)
    : seed_(seed), period_(period_seconds), genesis_(genesis_seconds) {
  if (period_seconds == 0 ||
      period_seconds > static_cast<uint64_t>(std::numeric_limits<int64_t>::max())) {
    throw Error(ErrorCode::kInvalidArgument, "beacon period must be positive");
  }
}

int64_t Beacon::timestamp(uint64_t round) const {
  const __int128 t = static_cast<__int128>(genesis_) +
                     static_cast<__int128>(round) * static_cast<__int128>(period_);
  if (t > std::numeric_limits<int64_t>::max()) {
    throw Error(ErrorCode::kInvalidArgument, "beacon round timestamp overflows");
  }
  return static_cast<int64_t>(t);
}

uint64_t Beacon::current_round(int64_t now_seconds) const {
  if (now_seconds < genesis_) {
    throw Error(ErrorCode::kFutureRound, "beacon has not started yet");
  }
  return static_cast<uint64_t>(now_seconds - genesis_) / period_;
}

BeaconValue Beacon::get(uint64_t round, int64_t now_seconds) const {
  if (now_seconds < genesis_ || round > current_round(now_seconds)) {
    throw Error(ErrorCode::kFutureRound,
                "beacon round " + std::to_string(round) + " is not yet available");
  }
  return BeaconValue{round, beacon_chain_value(seed_, round), timestamp(round)};
}

BeaconValue Beacon::get(uint64_t round) const {
  return get(round, unix_now());
}

bool Beacon::verify(const BeaconValue& bv) const {
  return bv.value == beacon_chain_value(seed_, bv.round);
}

Beacon beacon_init(const BeaconSeed& seed, uint64_t period_seconds) {
  return Beacon(seed, period_seconds, unix_now());
}

int64_t unix_now() {
  using namespace std::chrono;
  return duration_cast<seconds>(system_clock::now().time_since_epoch()).count();
}

}  // namespace sls
