#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "slicefi/depgraph.hpp"
#include "slicefi/ir.hpp"
#include "slicefi/sim.hpp"

namespace slicefi {

struct DynamicSliceSeries {
  std::vector<std::vector<StatementId>> slices;  // [cycle] -> sorted ids

  std::size_t n_cycles() const noexcept { return slices.size(); }
};

/// Per-cycle intersection of the static slice with the executed statements.
DynamicSliceSeries dynamic_slice(const StaticSlice& slice, const CoverageTrace& coverage);

/// Transient: the flipped bit is restored at the end of the injection cycle
/// unless the design overwrote it. Persistent: it stays until overwritten.
enum class FaultSemantics { Transient, Persistent };

enum class PruneMode { Exhaustive, StaticPrune, DynamicPrune, DynamicLivePrune };

std::string_view to_string(FaultSemantics s);
std::string_view to_string(PruneMode m);
FaultSemantics parse_semantics(std::string_view text);
PruneMode parse_mode(std::string_view text);

struct FaultDescriptor {
  SignalId target = 0;
  std::uint32_t row = 0;  // 0 for registers
  std::uint32_t bit = 0;
  std::uint32_t cycle = 0;
  FaultSemantics semantics = FaultSemantics::Transient;

  auto key() const noexcept { return std::tuple(target, row, bit, cycle); }
  friend bool operator==(const FaultDescriptor&, const FaultDescriptor&) = default;
  friend bool operator<(const FaultDescriptor& a, const FaultDescriptor& b) { return a.key() < b.key(); }
};

struct FaultList {
  PruneMode mode = PruneMode::Exhaustive;
  FaultSemantics semantics = FaultSemantics::Transient;
  std::vector<FaultDescriptor> faults;  // sorted by (target, row, bit, cycle), unique
  std::size_t universe_size = 0;
};

/// Storage signals whose names match a comma-separated list of glob patterns,
/// or every Reg/Memory for "all". Throws NoMatchingTargets.
std::vector<SignalId> select_targets(const ElaboratedDesign& design, std::string_view target_spec);

/// Every (target, row, bit, cycle) of the selected signals.
FaultList fault_universe(const ElaboratedDesign& design, std::size_t n_cycles, std::string_view target_spec,
                         FaultSemantics semantics = FaultSemantics::Transient);

/// How memory faults are kept by the dynamic modes: all rows whenever an
/// in-slice statement reads the memory, or only the rows the golden run
/// actually read there.
enum class MemoryRowPolicy { WholeSignal, ReadAddresses };

struct PruneOptions {
  PruneMode mode = PruneMode::DynamicPrune;
  FaultSemantics semantics = FaultSemantics::Transient;
  MemoryRowPolicy memory_rows = MemoryRowPolicy::ReadAddresses;
  std::string target_spec = "all";
};

/// Golden-run data the dynamic modes consult. `access` may be null; pruning
/// then falls back to whole-signal memory handling and never assumes a flipped
/// bit was overwritten.
struct PruneInputs {
  const StaticSlice& static_slice;
  const DynamicSliceSeries* dynamic = nullptr;
  const AccessTrace* access = nullptr;
  std::vector<SignalId> observation;
};

/// Keep rules, per mode:
///  - Exhaustive: every fault.
///  - StaticPrune: faults on registers the static slice touches.
///  - DynamicPrune: (r, t) when an in-slice statement executed at t reads r.
///  - DynamicLivePrune: (r, t) when the flipped bit is still in place at some
///    later in-slice read of r, or at an end-of-cycle sample of an observed r.
/// Throws ModeRequiresDynamicSlice when a dynamic mode gets no series.
FaultList generate_fault_list(const ElaboratedDesign& design, const PruneInputs& inputs, std::size_t n_cycles,
                              const PruneOptions& options);

/// `signal,row,bit,cycle,mode,semantics` with a header line.
std::string format_fault_csv(const ElaboratedDesign& design, const FaultList& list);
/// Inverse of format_fault_csv. universe_size is left at zero.
FaultList parse_fault_csv(const ElaboratedDesign& design, std::string_view text);

}  // namespace slicefi
