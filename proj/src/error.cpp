#include "shardkit/error.hpp"

namespace shardkit {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::kCheckFailed: return "check failed";
    case Errc::kParse: return "parse error";
    case Errc::kParameter: return "parameter error";
    case Errc::kCrucialMissing: return "crucial share missing";
    case Errc::kInsufficientShares: return "insufficient distinct shares";
    case Errc::kInconsistentShares: return "inconsistent shares";
    case Errc::kEnumerationLimit: return "enumeration limit";
    case Errc::kIo: return "i/o error";
    case Errc::kInternal: return "internal error";
    case Errc::kMismatch: return "scheme mismatch";
  }
  return "unknown error";
}

}  // namespace shardkit
