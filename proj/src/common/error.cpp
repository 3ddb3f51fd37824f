#include "common/error.hpp"

namespace covision {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::InvalidPose: return "invalid-pose";
    case ErrorKind::ExhaustedRegion: return "exhausted-region";
    case ErrorKind::PartialScenario: return "partial-scenario";
    case ErrorKind::Io: return "io";
    case ErrorKind::Format: return "format";
    case ErrorKind::MissingFile: return "missing-file";
    case ErrorKind::Version: return "version";
    case ErrorKind::NotFound: return "not-found";
  }
  return "unknown";
}

}  // namespace covision
