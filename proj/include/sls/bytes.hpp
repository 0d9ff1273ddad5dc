#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace sls {

using Bytes = std::vector<uint8_t>;
using ByteView = std::span<const uint8_t>;

inline ByteView as_bytes(std::string_view s) {
  return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

std::string to_hex(ByteView bytes);
// Accepts upper- or lowercase digits; throws Error(kParse) on odd length or bad digit.
Bytes from_hex(std::string_view hex);

// Minimal big-endian encoding; zero encodes as an empty string.
Bytes encode_mpz(const mpz_class& value);
// Big-endian, left-padded to `width`. Throws if the value does not fit.
Bytes encode_mpz_fixed(const mpz_class& value, size_t width);
mpz_class decode_mpz(ByteView bytes);

size_t byte_length(const mpz_class& value);

// Lowercase hex without leading zeros ("0" for zero).
std::string mpz_to_hex(const mpz_class& value);
mpz_class mpz_from_hex(std::string_view hex);

void append_u32be(uint32_t value, Bytes* out);
void append_u64be(uint64_t value, Bytes* out);
uint32_t read_u32be(ByteView input, size_t* offset);
// u32 length prefix followed by the field.
void append_sized(ByteView field, Bytes* out);
Bytes read_sized(ByteView input, size_t* offset, size_t max_len);

// Overwrites the limbs of a secret integer before it is released.
void wipe(mpz_class& value);

}  // namespace sls
