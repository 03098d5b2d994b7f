#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slicefi/ir.hpp"
#include "slicefi/sim.hpp"
#include "slicefi/slicer.hpp"

namespace slicefi {

enum class Classification { Detected, Undetected };

std::string_view to_string(Classification c);

struct FaultOutcome {
  Classification classification = Classification::Undetected;
  std::optional<std::uint32_t> detection_cycle;  // first observation mismatch
  std::optional<std::uint32_t> latency;          // detection_cycle - injection cycle

  bool detected() const noexcept { return classification == Classification::Detected; }
  friend bool operator==(const FaultOutcome&, const FaultOutcome&) = default;
};

/// Re-simulates from cycle 0, XORs the target bit at the start of the fault
/// cycle and compares every later end-of-cycle sample against the golden
/// trace, stopping at the first mismatch. Dynamic memory indices the fault
/// drives out of range read as zero and drop writes.
///
/// Throws FaultOutOfBounds for a fault outside the design or the stimulus
/// horizon and TraceMismatchHorizon when `golden` does not belong to this
/// stimulus and observation list.
FaultOutcome inject_and_simulate(const ElaboratedDesign& design, const Stimulus& stimulus,
                                 std::span<const SignalId> observation, const FaultDescriptor& fault,
                                 const GoldenTrace& golden);

struct CampaignResult {
  std::vector<FaultDescriptor> faults;
  std::vector<FaultOutcome> outcomes;  // parallel to faults
  std::size_t injected = 0;
  std::size_t detected = 0;
  std::size_t undetected = 0;
  double wall_seconds = 0;
  double cpu_seconds = 0;  // summed per-fault simulation time
};

/// Runs every fault of the list on `workers` threads. Outcomes do not depend
/// on the worker count. Throws EmptyFaultList for an empty list.
CampaignResult run_campaign(const ElaboratedDesign& design, const Stimulus& stimulus,
                            std::span<const SignalId> observation, const FaultList& faults, const GoldenTrace& golden,
                            unsigned workers = 1);

/// `signal,row,bit,cycle,outcome,detection_cycle,latency`; the last two are
/// empty for undetected faults.
std::string format_results_csv(const ElaboratedDesign& design, const CampaignResult& result);

}  // namespace slicefi
