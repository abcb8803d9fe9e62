#include "offload/error.hpp"

namespace offload {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kInvalidSnapshot: return "invalid snapshot";
    case ErrorCode::kInvalidBounds: return "invalid bounds";
    case ErrorCode::kInvalidWeights: return "invalid weights";
    case ErrorCode::kNoCandidates: return "no candidates";
    case ErrorCode::kConfig: return "config error";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kRemap: return "remap error";
    case ErrorCode::kInternal: return "internal error";
  }
  return "unknown error";
}

}  // namespace offload
