#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace lsm {

enum class ErrorKind {
  Format,
  EmptyInput,
  Parameter,
  Size,
  Assignment,
  Coverage,
  Representative,
  Rank,
  Kernel,
  Bandwidth,
  Normalization,
  Io,
  Stage,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it onto an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by the pipeline: wraps an inner error with the stage that failed.
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& inner)
      : Error(ErrorKind::Stage, stage + ": " + inner.what()),
        stage_(std::move(stage)),
        inner_kind_(inner.kind()) {}

  const std::string& stage() const noexcept { return stage_; }
  ErrorKind inner_kind() const noexcept { return inner_kind_; }

 private:
  std::string stage_;
  ErrorKind inner_kind_;
};

}  // namespace lsm
