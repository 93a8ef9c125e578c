#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace shardkit {

// Values match the C API status codes. The CLI exits with the same number,
// except kMismatch which it reports as a format error (2).
enum class Errc : int {
  kCheckFailed = 1,
  kParse = 2,
  kParameter = 3,
  kCrucialMissing = 4,
  kInsufficientShares = 5,
  kInconsistentShares = 6,
  kEnumerationLimit = 7,
  kIo = 8,
  kInternal = 9,
  kMismatch = 10,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Error(Errc code, const std::string& what, std::string node_path)
      : std::runtime_error(node_path.empty() ? what : what + " at node " + node_path),
        code_(code),
        node_path_(std::move(node_path)) {}

  Errc code() const noexcept { return code_; }
  // Dot-separated child indices of the scheme node that failed; empty when
  // the error did not originate inside a scheme tree.
  const std::string& node_path() const noexcept { return node_path_; }

 private:
  Errc code_;
  std::string node_path_;
};

}  // namespace shardkit
