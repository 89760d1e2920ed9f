#pragma once

#include <stdexcept>
#include <string>

namespace lfmm {

// Every failure the library reports carries one of these codes. The C API
// maps them one-to-one onto lfmm_status values.
enum class ErrorCode {
  InvalidArgument = 1,
  Parse,
  Io,
  Config,
  MalformedHeader,
  RleOverrun,
  EmptyView,
  NoPlaneFound,
  DegenerateHull,
  EmptyCompletion,
  DegenerateSet,
  NearVertical,
  NoPath,
  EmptyMemory,
  NearZeroNormalizer,
  FrameMismatch,
  EmptyMesh,
  NoSuccesses,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace lfmm
