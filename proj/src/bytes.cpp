#include "sls/bytes.hpp"

#include <sodium.h>

#include "sls/error.hpp"

namespace sls {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kRetryExhausted: return "retry budget exhausted";
    case ErrorCode::kModulusMismatch: return "modulus mismatch";
    case ErrorCode::kTrapdoorMismatch: return "trapdoor does not match modulus";
    case ErrorCode::kParameterSize: return "parameter size";
    case ErrorCode::kMalformedParams: return "malformed parameters";
    case ErrorCode::kOversizeMessage: return "message too large";
    case ErrorCode::kDecryptionFailed: return "decryption failed";
    case ErrorCode::kBindingMismatch: return "puzzle binding mismatch";
    case ErrorCode::kKeyMismatch: return "key does not match parameters";
    case ErrorCode::kMissingCalibration: return "missing calibration";
    case ErrorCode::kFutureRound: return "beacon round not yet available";
    case ErrorCode::kTimerResolution: return "timer resolution insufficient";
    case ErrorCode::kIo: return "i/o error";
  }
  return "unknown error";
}

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string to_hex(ByteView bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0F]);
  }
  return out;
}

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) {
    throw Error(ErrorCode::kParse, "hex string has odd length");
  }
  Bytes out(hex.size() / 2);
  for (size_t i = 0; i < out.size(); ++i) {
    const int hi = hex_digit(hex[2 * i]);
    const int lo = hex_digit(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) {
      throw Error(ErrorCode::kParse, "invalid hex digit");
    }
    out[i] = static_cast<uint8_t>((hi << 4) | lo);
  }
  return out;
}

size_t byte_length(const mpz_class& value) {
  if (value == 0) return 0;
  return (mpz_sizeinbase(value.get_mpz_t(), 2) + 7) / 8;
}

Bytes encode_mpz(const mpz_class& value) {
  if (value < 0) {
    throw Error(ErrorCode::kInvalidArgument, "cannot encode negative integer");
  }
  Bytes out(byte_length(value));
  if (!out.empty()) {
    size_t written = 0;
    mpz_export(out.data(), &written, 1, 1, 1, 0, value.get_mpz_t());
  }
  return out;
}

Bytes encode_mpz_fixed(const mpz_class& value, size_t width) {
  Bytes minimal = encode_mpz(value);
  if (minimal.size() > width) {
    throw Error(ErrorCode::kInvalidArgument, "integer does not fit fixed width");
  }
  Bytes out(width - minimal.size(), 0);
  out.insert(out.end(), minimal.begin(), minimal.end());
  return out;
}

mpz_class decode_mpz(ByteView bytes) {
  mpz_class out;
  if (!bytes.empty()) {
    mpz_import(out.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  }
  return out;
}

std::string mpz_to_hex(const mpz_class& value) {
  if (value < 0) {
    throw Error(ErrorCode::kInvalidArgument, "cannot hex-encode negative integer");
  }
  return value.get_str(16);
}

mpz_class mpz_from_hex(std::string_view hex) {
  if (hex.empty()) {
    throw Error(ErrorCode::kParse, "empty hex integer");
  }
  for (char c : hex) {
    if (hex_digit(c) < 0) {
      throw Error(ErrorCode::kParse, "invalid hex digit in integer");
    }
  }
  return mpz_class(std::string(hex), 16);
}

void append_u32be(uint32_t value, Bytes* out) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    out->push_back(static_cast<uint8_t>((value >> shift) & 0xFF));
  }
}

void append_u64be(uint64_t value, Bytes* out) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out->push_back(static_cast<uint8_t>((value >> shift) & 0xFF));
  }
}

uint32_t read_u32be(ByteView input, size_t* offset) {
  if (*offset + 4 > input.size()) {
    throw Error(ErrorCode::kParse, "not enough bytes to read u32");
  }
  const size_t i = *offset;
  *offset += 4;
  return (static_cast<uint32_t>(input[i]) << 24) |
         (static_cast<uint32_t>(input[i + 1]) << 16) |
         (static_cast<uint32_t>(input[i + 2]) << 8) |
         static_cast<uint32_t>(input[i + 3]);
}

void append_sized(ByteView field, Bytes* out) {
  if (field.size() > UINT32_MAX) {
    throw Error(ErrorCode::kInvalidArgument, "sized field exceeds u32 length");
  }
  append_u32be(static_cast<uint32_t>(field.size()), out);
  out->insert(out->end(), field.begin(), field.end());
}

Bytes read_sized(ByteView input, size_t* offset, size_t max_len) {
  const uint32_t len = read_u32be(input, offset);
  if (len > max_len || *offset + len > input.size()) {
    throw Error(ErrorCode::kParse, "sized field has inconsistent length");
  }
  Bytes out(input.begin() + static_cast<std::ptrdiff_t>(*offset),
            input.begin() + static_cast<std::ptrdiff_t>(*offset + len));
  *offset += len;
  return out;
}

void wipe(mpz_class& value) {
  const size_t limbs = mpz_size(value.get_mpz_t());
  if (limbs > 0) {
    mp_limb_t* data = mpz_limbs_modify(value.get_mpz_t(), static_cast<mp_size_t>(limbs));
    sodium_memzero(data, limbs * sizeof(mp_limb_t));
  }
  value = 0;
}

}  // namespace sls
