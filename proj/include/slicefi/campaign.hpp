#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slicefi/depgraph.hpp"
#include "slicefi/faultsim.hpp"
#include "slicefi/ir.hpp"
#include "slicefi/sim.hpp"
#include "slicefi/slicer.hpp"

namespace slicefi {

/// Settings of one campaign. Read from a `key = value` file; see
/// docs/formats.md for the keys.
struct CampaignConfig {
  std::filesystem::path design_path;
  std::filesystem::path stimulus_path;
  std::vector<std::string> observation;
  std::string target_spec = "all";
  PruneMode mode = PruneMode::DynamicPrune;
  std::optional<FaultSemantics> semantics;  // unset: Persistent for DynamicLivePrune, else Transient
  MemoryRowPolicy memory_rows = MemoryRowPolicy::ReadAddresses;
  unsigned workers = 1;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir;

  FaultSemantics effective_semantics() const;
  PruneOptions prune_options() const;
  /// Rejects out-of-range values and the unsound DynamicPrune + Persistent pairing.
  void validate() const;
};

/// Relative paths are resolved against `base_dir`.
CampaignConfig parse_config(std::string_view text, const std::filesystem::path& base_dir);
CampaignConfig load_config(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Everything the pipeline derives before fault injection: the elaborated
/// design, static slice, golden run and dynamic slices.
struct PreparedDesign {
  ElaboratedDesign design;
  Stimulus stimulus;
  std::vector<SignalId> observation;
  Pdg pdg;
  StaticSlice slice;
  GoldenRun golden;
  DynamicSliceSeries dynamic;

  std::size_t n_cycles() const noexcept { return stimulus.n_cycles(); }
  FaultList fault_list(const PruneOptions& options) const;
};

std::vector<SignalId> resolve_observation(const ElaboratedDesign& design, const std::vector<std::string>& names);

PreparedDesign prepare(ElaboratedDesign design, Stimulus stimulus, const std::vector<std::string>& observation);
PreparedDesign prepare_from_text(std::string_view design_text, std::string_view stimulus_text,
                                 const std::vector<std::string>& observation);
PreparedDesign prepare(const CampaignConfig& config);

struct CampaignReport {
  std::string design_name;
  PruneMode mode = PruneMode::DynamicPrune;
  FaultSemantics semantics = FaultSemantics::Transient;
  std::vector<std::string> observation;
  std::string fault_target;
  std::size_t universe_size = 0;
  std::size_t injected = 0;
  std::size_t detected = 0;
  std::size_t undetected = 0;
  std::optional<double> cpu_seconds;
  std::optional<double> wall_seconds;
  std::string results_path;

  /// injected / universe; zero only when pruning removed every fault.
  double prune_ratio() const noexcept;
  /// Field-wise equality; timing fields only need to be present on both sides.
  bool equivalent(const CampaignReport& other) const;
};

enum class ReportFormat { Text, Structured };

/// Text mirrors the row labels of a campaign results table (`label | value`);
/// Structured is `key = value`. Throws InternalInvariant when
/// injected != detected + undetected.
std::string emit_report(const CampaignReport& report, ReportFormat format);
CampaignReport parse_structured_report(std::string_view text);

struct PipelineResult {
  FaultList faults;
  CampaignResult campaign;  // empty when pruning left nothing to inject
  CampaignReport report;
};

/// Builds the fault list for `options`, runs it and assembles the report.
PipelineResult run_prepared(const PreparedDesign& prepared, const PruneOptions& options, unsigned workers);
PipelineResult run_pipeline(const CampaignConfig& config);

struct OracleComparison {
  PruneMode mode = PruneMode::DynamicPrune;
  FaultSemantics semantics = FaultSemantics::Transient;
  std::size_t pruned_injected = 0;
  std::size_t exhaustive_injected = 0;
  std::size_t pruned_detected = 0;
  std::size_t exhaustive_detected = 0;
  std::vector<FaultDescriptor> violations;           // pruned away, yet detected exhaustively
  std::vector<FaultDescriptor> completeness_misses;  // detected exhaustively, not by the pruned run
  bool complete = false;                             // detected sets equal

  bool verdict() const noexcept { return violations.empty() && complete; }
};

/// Compares a pruned list (and its campaign, when non-empty) with an
/// exhaustive campaign over the same targets and semantics.
OracleComparison compare_outcomes(const FaultList& pruned, const CampaignResult& pruned_result,
                                  const CampaignResult& exhaustive);
OracleComparison compare_with_oracle(const PreparedDesign& prepared, const PruneOptions& options, unsigned workers);
OracleComparison compare_with_oracle(const CampaignConfig& config);
std::string format_oracle(const ElaboratedDesign& design, const OracleComparison& cmp);

struct GeneratorParams {
  unsigned max_regs = 4;      // 0..8 storage signals
  unsigned max_stmts = 12;    // 1..64 statements
  bool memory = false;        // add one small memory (needs max_regs >= 1)
  unsigned max_reg_bits = 8;  // 1..64 stored bits in total
  unsigned cycles = 16;       // 1..256 stimulus rows

  void validate() const;
};

struct GeneratedDesign {
  std::string name;
  std::string mrtl;
  std::string stimulus_csv;
  std::vector<std::string> observation;
};

/// Random MiniRTL module plus stimulus. Nets only read lower-numbered nets, so
/// the result always elaborates. Identical seeds give identical bytes.
GeneratedDesign generate_random_design(std::uint64_t seed, const GeneratorParams& params);

}  // namespace slicefi
