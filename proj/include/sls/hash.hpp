#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string_view>

#include <sodium.h>

#include "sls/bytes.hpp"

namespace sls {

using Digest = std::array<uint8_t, 32>;

// Every hash in the library starts with this prefix.
inline constexpr std::string_view kHashPrefix = "SLS-v1";

class Sha256 {
 public:
  Sha256();
  Sha256& update(ByteView data);
  Digest finish();

 private:
  crypto_hash_sha256_state state_;
};

Digest sha256(ByteView data);

// SHA-256 over kHashPrefix, an optional "/<domain>" suffix, then each part as
// u64be(length) || part. With an empty domain this is exactly
// H("SLS-v1" || lp(part_0) || lp(part_1) ...).
Digest domain_hash(std::string_view domain, std::initializer_list<ByteView> parts);

}  // namespace sls
