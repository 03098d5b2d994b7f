#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slicefi/ir.hpp"

namespace slicefi {

/// Per-cycle input values. Columns always follow
/// ElaboratedDesign::stimulus_inputs, whatever the order in the source file.
struct Stimulus {
  std::vector<SignalId> inputs;
  std::vector<std::vector<Word>> rows;

  std::size_t n_cycles() const noexcept { return rows.size(); }
};

/// Header row of input names (clock excluded), one row per cycle, values in
/// decimal or 0x-hex. Throws StimulusFormat or EmptyStimulus.
Stimulus parse_stimulus_csv(const ElaboratedDesign& design, std::string_view text);
std::string format_stimulus_csv(const ElaboratedDesign& design, const Stimulus& stimulus);

/// Register, wire and memory contents. Everything starts at zero.
class SimState {
 public:
  explicit SimState(const ElaboratedDesign& design);

  Word value(SignalId id) const { return values_[id]; }
  void set_value(SignalId id, Word v) { values_[id] = v; }

  Word row(const ElaboratedDesign& design, SignalId mem, std::size_t row) const {
    return memory_[design.memory_base[mem] + row];
  }
  void set_row(const ElaboratedDesign& design, SignalId mem, std::size_t row, Word v) {
    memory_[design.memory_base[mem] + row] = v;
  }

  /// Stored word of a fault target: the register itself or one memory row.
  Word& storage(const ElaboratedDesign& design, SignalId sig, std::size_t row);

  friend bool operator==(const SimState&, const SimState&) = default;

 private:
  std::vector<Word> values_;
  std::vector<Word> memory_;
};

/// How dynamic memory indices outside the declared depth are treated.
/// Strict raises MemoryIndexOutOfRange; Lenient reads zero and drops writes.
enum class IndexPolicy { Strict, Lenient };

struct MemoryRead {
  StatementId statement = 0;
  SignalId memory = 0;
  std::uint32_t row = 0;

  friend auto operator<=>(const MemoryRead&, const MemoryRead&) = default;
};

struct CommittedWrite {
  SignalId signal = 0;
  std::uint32_t row = 0;
  Word mask = 0;   // bits of the stored word replaced
  Word value = 0;  // already shifted into place and masked

  friend bool operator==(const CommittedWrite&, const CommittedWrite&) = default;
};

struct CycleResult {
  std::vector<StatementId> executed;  // sorted, sliceable statements only
  std::vector<CommittedWrite> writes; // in commit order
  std::vector<MemoryRead> reads;      // memory rows read before commit, sorted
};

struct CycleOptions {
  IndexPolicy policy = IndexPolicy::Strict;
  std::size_t cycle = 0;   // for diagnostics
  bool record = true;      // fill CycleResult; off for fast re-simulation
};

/// One clock cycle: apply inputs, settle continuous assigns, run every
/// sequential process against start-of-cycle values, then commit all
/// nonblocking writes at once. Wire values left in `state` are the ones the
/// processes saw.
CycleResult evaluate_cycle(const ElaboratedDesign& design, SimState& state, std::span<const Word> inputs,
                           const CycleOptions& options = {});

/// Re-settles continuous assigns on the post-commit state (inputs unchanged)
/// and reads the observation signals. Memory reads performed while settling
/// are appended to `reads` when given.
std::vector<Word> sample_observation(const ElaboratedDesign& design, SimState& state,
                                     std::span<const SignalId> observation, IndexPolicy policy = IndexPolicy::Strict,
                                     std::size_t cycle = 0, std::vector<MemoryRead>* reads = nullptr);

/// Evaluates one expression against a state; exposed for analyses and tests.
Word evaluate_expr(const ElaboratedDesign& design, const SimState& state, const Expr& expr,
                   IndexPolicy policy = IndexPolicy::Strict);

struct GoldenTrace {
  std::vector<SignalId> observation;
  std::vector<std::vector<Word>> values;  // [cycle][observation index], sampled end of cycle

  std::size_t n_cycles() const noexcept { return values.size(); }
  friend bool operator==(const GoldenTrace&, const GoldenTrace&) = default;
};

struct CoverageTrace {
  std::vector<std::vector<StatementId>> executed;  // [cycle] -> sorted ids

  std::size_t n_cycles() const noexcept { return executed.size(); }
  friend bool operator==(const CoverageTrace&, const CoverageTrace&) = default;
};

/// Storage-level activity of the golden run, used for address-precise and
/// liveness-aware fault pruning.
struct AccessTrace {
  std::vector<std::vector<MemoryRead>> reads;         // before commit
  std::vector<std::vector<MemoryRead>> sample_reads;  // while settling for sampling
  std::vector<std::vector<CommittedWrite>> writes;

  friend bool operator==(const AccessTrace&, const AccessTrace&) = default;
};

struct GoldenRun {
  GoldenTrace golden;
  CoverageTrace coverage;
  AccessTrace access;
};

/// Checks that every observation signal exists and is not a memory.
void validate_observation(const ElaboratedDesign& design, std::span<const SignalId> observation);

GoldenRun simulate_golden(const ElaboratedDesign& design, const Stimulus& stimulus,
                          std::span<const SignalId> observation);

/// `cycle,<name>,...` with decimal values.
std::string format_golden_csv(const ElaboratedDesign& design, const GoldenTrace& trace);

/// Run-length encoded coverage: consecutive cycles with identical executed
/// sets share one line, `first[-last]: id id ...`.
std::string format_coverage_rle(const CoverageTrace& coverage);
CoverageTrace parse_coverage_rle(std::string_view text);

}  // namespace slicefi
