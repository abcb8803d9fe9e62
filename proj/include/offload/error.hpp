#pragma once

#include <stdexcept>
#include <string>

namespace offload {

// Numeric values mirror offload_status in offload.h.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kInvalidSnapshot = 2,
  kInvalidBounds = 3,
  kInvalidWeights = 4,
  kNoCandidates = 5,
  kConfig = 6,
  kParse = 7,
  kIo = 8,
  kRemap = 9,
  kInternal = 10,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace offload
