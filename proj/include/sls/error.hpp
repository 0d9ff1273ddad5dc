#pragma once

#include <stdexcept>
#include <string>

namespace sls {

enum class ErrorCode {
  kInvalidArgument,
  kParse,
  kRetryExhausted,
  kModulusMismatch,
  kTrapdoorMismatch,
  kParameterSize,
  kMalformedParams,
  kOversizeMessage,
  kDecryptionFailed,
  kBindingMismatch,
  kKeyMismatch,
  kMissingCalibration,
  kFutureRound,
  kTimerResolution,
  kIo,
};

const char* to_string(ErrorCode code);

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sls
