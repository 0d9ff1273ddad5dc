#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "sls/beacon.hpp"
#include "sls/bench.hpp"
#include "sls/sls.hpp"

// Versioned line-oriented text files shared by the CLI and tests. Integers are
// lowercase big-endian hex unless noted; parse_* throws Error(kParse) on any
// deviation and runs the type's invariant checks.
namespace sls::formats {

// slsparams-v1 / n: / t: / x: / sig_pk: / ek:
std::string serialize_params(const SlsPublicParams& pp);
SlsPublicParams parse_params(std::string_view text);

// slssk-v1 / sk:
std::string serialize_secret_key(const SlsSecretKey& key);
SlsSecretKey parse_secret_key(std::string_view text);

// slstrapdoor-v1 / p: / q: / phi:
std::string serialize_trapdoor(const TrapdoorSecret& sp);
TrapdoorSecret parse_trapdoor(std::string_view text);

// slssig-v1 / sigma: / beacon_round: (decimal) / beacon_value: / beacon_time: (decimal)
std::string serialize_signature(const ShortLivedSignature& sig);
ShortLivedSignature parse_signature(std::string_view text);

// seed: <64 hex> / period: <seconds> [/ genesis: <unix seconds>]
std::string serialize_beacon(const Beacon& beacon);
Beacon parse_beacon(std::string_view text);

// slscal-v1 / lambda: / sample_t: / rate: (decimal)
std::string serialize_calibration(const bench::CalibrationResult& cal);
bench::CalibrationResult parse_calibration(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents,
                bool owner_only = false);

}  // namespace sls::formats
