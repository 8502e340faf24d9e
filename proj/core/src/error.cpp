#include "lsmapper/error.hpp"

namespace lsm {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Format: return "format";
    case ErrorKind::EmptyInput: return "empty-input";
    case ErrorKind::Parameter: return "parameter";
    case ErrorKind::Size: return "size";
    case ErrorKind::Assignment: return "assignment";
    case ErrorKind::Coverage: return "coverage";
    case ErrorKind::Representative: return "representative";
    case ErrorKind::Rank: return "rank";
    case ErrorKind::Kernel: return "kernel";
    case ErrorKind::Bandwidth: return "bandwidth";
    case ErrorKind::Normalization: return "normalization";
    case ErrorKind::Io: return "io";
    case ErrorKind::Stage: return "stage";
  }
  return "unknown";
}

}  // namespace lsm
