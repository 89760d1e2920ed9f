#include "lfmm/core/error.hpp"

namespace lfmm {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::Io: return "IoError";
    case ErrorCode::Config: return "ConfigError";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::RleOverrun: return "RleOverrun";
    case ErrorCode::EmptyView: return "EmptyView";
    case ErrorCode::NoPlaneFound: return "NoPlaneFound";
    case ErrorCode::DegenerateHull: return "DegenerateHull";
    case ErrorCode::EmptyCompletion: return "EmptyCompletion";
    case ErrorCode::DegenerateSet: return "DegenerateSet";
    case ErrorCode::NearVertical: return "NearVertical";
    case ErrorCode::NoPath: return "NoPath";
    case ErrorCode::EmptyMemory: return "EmptyMemory";
    case ErrorCode::NearZeroNormalizer: return "NearZeroNormalizer";
    case ErrorCode::FrameMismatch: return "FrameMismatch";
    case ErrorCode::EmptyMesh: return "EmptyMesh";
    case ErrorCode::NoSuccesses: return "NoSuccesses";
  }
  return "Unknown";
}

}  // namespace lfmm
