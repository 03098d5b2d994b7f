#include "slicefi/error.hpp"

namespace slicefi {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::UnknownSignal: return "UnknownSignal";
    case ErrorKind::CombinationalLoop: return "CombinationalLoop";
    case ErrorKind::MultipleDrivers: return "MultipleDrivers";
    case ErrorKind::WidthMismatch: return "WidthMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::IllegalTarget: return "IllegalTarget";
    case ErrorKind::UndrivenOutput: return "UndrivenOutput";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::StimulusFormat: return "StimulusFormat";
    case ErrorKind::EmptyStimulus: return "EmptyStimulus";
    case ErrorKind::EmptyCriterion: return "EmptyCriterion";
    case ErrorKind::UnknownObservationSignal: return "UnknownObservationSignal";
    case ErrorKind::NoMatchingTargets: return "NoMatchingTargets";
    case ErrorKind::ModeRequiresDynamicSlice: return "ModeRequiresDynamicSlice";
    case ErrorKind::MemoryIndexOutOfRange: return "MemoryIndexOutOfRange";
    case ErrorKind::FaultOutOfBounds: return "FaultOutOfBounds";
    case ErrorKind::TraceMismatchHorizon: return "TraceMismatchHorizon";
    case ErrorKind::EmptyFaultList: return "EmptyFaultList";
    case ErrorKind::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError:
    case ErrorKind::DuplicateName:
    case ErrorKind::UnknownSignal:
      return 2;
    case ErrorKind::CombinationalLoop:
    case ErrorKind::MultipleDrivers:
    case ErrorKind::WidthMismatch:
    case ErrorKind::IndexOutOfRange:
    case ErrorKind::IllegalTarget:
    case ErrorKind::UndrivenOutput:
      return 3;
    case ErrorKind::ConfigError:
    case ErrorKind::IoError:
    case ErrorKind::StimulusFormat:
    case ErrorKind::EmptyStimulus:
    case ErrorKind::EmptyCriterion:
    case ErrorKind::UnknownObservationSignal:
    case ErrorKind::NoMatchingTargets:
    case ErrorKind::ModeRequiresDynamicSlice:
      return 4;
    case ErrorKind::MemoryIndexOutOfRange:
    case ErrorKind::FaultOutOfBounds:
    case ErrorKind::TraceMismatchHorizon:
    case ErrorKind::EmptyFaultList:
    case ErrorKind::InternalInvariant:
      return 5;
  }
  return 5;
}

}  // namespace slicefi
