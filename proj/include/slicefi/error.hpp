#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace slicefi {

struct SourceLoc {
  std::uint32_t line = 0;
  std::uint32_t column = 0;

  friend bool operator==(const SourceLoc&, const SourceLoc&) = default;
};

enum class ErrorKind {
  // parse
  SyntaxError,
  DuplicateName,
  UnknownSignal,
  // elaboration
  CombinationalLoop,
  MultipleDrivers,
  WidthMismatch,
  IndexOutOfRange,
  IllegalTarget,
  UndrivenOutput,
  // configuration and input files
  ConfigError,
  IoError,
  StimulusFormat,
  EmptyStimulus,
  EmptyCriterion,
  UnknownObservationSignal,
  NoMatchingTargets,
  ModeRequiresDynamicSlice,
  // runtime
  MemoryIndexOutOfRange,
  FaultOutOfBounds,
  TraceMismatchHorizon,
  EmptyFaultList,
  InternalInvariant,
};

std::string_view to_string(ErrorKind kind);

/// Process exit code for an error category: parse 2, elaboration 3,
/// configuration 4, runtime 5.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::optional<SourceLoc> loc = std::nullopt)
      : std::runtime_error(message), kind_(kind), loc_(loc) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<SourceLoc>& loc() const noexcept { return loc_; }

 private:
  ErrorKind kind_;
  std::optional<SourceLoc> loc_;
};

}  // namespace slicefi
