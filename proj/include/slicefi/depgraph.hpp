#pragma once

#include <span>
#include <string>
#include <vector>

#include "slicefi/ir.hpp"

namespace slicefi {

enum class EdgeKind { Data, Control };

struct PdgEdge {
  StatementId from = 0;
  StatementId to = 0;
  EdgeKind kind = EdgeKind::Data;

  friend auto operator<=>(const PdgEdge&, const PdgEdge&) = default;
};

/// Program dependence graph over sliceable statements.
///
/// A data edge a->b exists when a defines a signal b reads. Over registers the
/// dependence crosses a clock edge, over nets it is within the cycle; the graph
/// does not distinguish the two. A control edge h->b exists when b lies
/// anywhere below the if/case header h.
struct Pdg {
  std::vector<StatementId> nodes;                    // sorted
  std::vector<PdgEdge> edges;                        // sorted, unique
  std::vector<std::vector<StatementId>> definers;    // [signal] -> sorted statement ids
  std::vector<std::vector<StatementId>> users;       // [signal] -> sorted statement ids
  std::vector<std::vector<StatementId>> predecessors;// [statement] -> sorted sources of in-edges
};

Pdg build_pdg(const ElaboratedDesign& design);

struct StaticSlice {
  std::vector<SignalId> criterion;     // sorted
  std::vector<StatementId> statements; // sorted
  std::vector<SignalId> registers;     // Reg/Memory signals touched by the slice, sorted

  bool contains(StatementId id) const;
  bool has_register(SignalId id) const;
};

/// Backward closure over data and control edges from every statement that
/// defines an observation signal. Throws EmptyCriterion when the observation
/// list is empty or nothing defines it, UnknownObservationSignal for ids that
/// do not exist.
StaticSlice static_slice(const Pdg& pdg, const ElaboratedDesign& design, std::span<const SignalId> observation);

/// One edge per line: `from kind to`, e.g. `3 data 5`.
std::string format_edge_list(const Pdg& pdg);

/// Sorted statement ids with their source line and text.
std::string format_slice(const ElaboratedDesign& design, const StaticSlice& slice);

}  // namespace slicefi
