#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slicefi/error.hpp"

namespace slicefi {

using SignalId = std::uint32_t;
using StatementId = std::uint32_t;
using Word = std::uint64_t;

inline constexpr unsigned kMaxWidth = 64;

constexpr Word width_mask(unsigned width) noexcept {
  return width >= 64 ? ~Word{0} : ((Word{1} << width) - 1);
}

/// Two-state bit vector of at most 64 bits; the value is always masked.
struct BitVector {
  unsigned width = 1;
  Word value = 0;

  static BitVector of(unsigned width, Word value) { return {width, value & width_mask(width)}; }

  friend bool operator==(const BitVector&, const BitVector&) = default;
};

enum class SignalKind { Input, Output, Wire, Reg, Memory };

std::string_view to_string(SignalKind kind);

struct SignalDecl {
  SignalId id = 0;
  std::string name;
  SignalKind kind = SignalKind::Wire;
  unsigned width = 1;
  unsigned depth = 0;  // memory rows; 0 for everything else
  SourceLoc loc;

  /// Reg and Memory signals hold state across cycles and are the fault targets.
  bool is_storage() const noexcept { return kind == SignalKind::Reg || kind == SignalKind::Memory; }
  unsigned rows() const noexcept { return kind == SignalKind::Memory ? depth : 1; }
};

enum class ExprOp : std::uint8_t {
  Const,
  Ref,
  MemRead,     // args: [row]
  BitSelect,   // args: [base, index]
  PartSelect,  // args: [base]; msb/lsb constant
  BitNot,
  LogNot,
  Neg,
  RedAnd,
  RedOr,
  RedXor,
  And,
  Or,
  Xor,
  LogAnd,
  LogOr,
  Add,
  Sub,
  Eq,
  Neq,
  Lt,
  Le,
  Gt,
  Ge,
  Shl,
  Shr,
  Concat,  // args most-significant first
  Mux,     // args: [cond, then, else]
};

struct Expr {
  ExprOp op = ExprOp::Const;
  unsigned width = 0;  // filled in by elaboration
  Word value = 0;      // Const
  bool sized = false;  // Const written with an explicit width
  SignalId signal = 0; // Ref, MemRead
  unsigned msb = 0;    // PartSelect
  unsigned lsb = 0;
  std::vector<Expr> args;
  SourceLoc loc;

  static Expr constant(Word value, unsigned width, bool sized = true) {
    Expr e;
    e.op = ExprOp::Const;
    e.value = value;
    e.width = width;
    e.sized = sized;
    return e;
  }
};

enum class StatementKind { NonBlockingAssign, ContinuousAssign, If, Case, Block };

std::string_view to_string(StatementKind kind);

struct Target {
  SignalId signal = 0;
  std::optional<Expr> row;  // memories only
  unsigned msb = 0;         // written bit range, inclusive
  unsigned lsb = 0;
  bool bit_range = false;   // an explicit [msb:lsb] or [bit] was written
};

struct CaseItem {
  std::vector<Expr> labels;  // empty for `default`
  StatementId body = 0;
};

struct Statement {
  StatementId id = 0;
  StatementKind kind = StatementKind::Block;
  SourceLoc loc;
  std::optional<StatementId> parent;
  // Block: body in order; If: then[, else]; Case: item bodies in item order.
  std::vector<StatementId> children;
  std::optional<Target> target;
  Expr expr;  // right-hand side, If condition or Case selector
  std::vector<CaseItem> items;

  bool is_assign() const noexcept {
    return kind == StatementKind::NonBlockingAssign || kind == StatementKind::ContinuousAssign;
  }
  bool is_header() const noexcept { return kind == StatementKind::If || kind == StatementKind::Case; }
  /// Blocks are transparent: they never appear in coverage, slices or the dependence graph.
  bool sliceable() const noexcept { return kind != StatementKind::Block; }
};

enum class ProcessKind { Sequential, Combinational };

struct Process {
  ProcessKind kind = ProcessKind::Sequential;
  StatementId root = 0;
  SourceLoc loc;
};

/// Name-resolved MiniRTL module as produced by the parser.
struct Design {
  std::string name;
  std::vector<std::string> ports;
  std::vector<SignalDecl> signals;
  std::vector<Process> processes;
  std::vector<Statement> statements;
  std::optional<SignalId> clock;

  std::optional<SignalId> find_signal(std::string_view name) const;
  const SignalDecl& signal(SignalId id) const { return signals.at(id); }
  const Statement& statement(StatementId id) const { return statements.at(id); }
};

struct DefUse {
  std::vector<SignalId> def;  // sorted, unique
  std::vector<SignalId> use;  // sorted, unique

  friend bool operator==(const DefUse&, const DefUse&) = default;
};

/// Width-checked design ready for analysis and simulation.
struct ElaboratedDesign : Design {
  std::vector<DefUse> defuse;               // indexed by StatementId
  std::vector<StatementId> comb_order;      // continuous assigns, dependencies first
  std::vector<SignalId> stimulus_inputs;    // inputs excluding the clock, id order
  std::vector<std::size_t> memory_base;     // first storage word of each memory
  std::size_t memory_words = 0;

  /// All sliceable statement ids in ascending order.
  std::vector<StatementId> sliceable_statements() const;
};

}  // namespace slicefi
