#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slicefi/error.hpp"
#include "slicefi/ir.hpp"

namespace slicefi {

struct Diagnostic {
  SourceLoc loc;
  ErrorKind kind = ErrorKind::SyntaxError;
  std::string message;
};

struct ParseResult {
  std::optional<Design> design;
  std::vector<Diagnostic> diagnostics;

  bool ok() const noexcept { return design.has_value(); }
};

/// Parses MiniRTL text. Names are resolved while parsing, so undeclared or
/// duplicate identifiers are reported here rather than during elaboration.
ParseResult parse_design(std::string_view source);

/// Resolves widths, builds the def/use table and enforces the single-driver,
/// driven-output and acyclic-combinational-logic rules. Throws Error.
ElaboratedDesign elaborate(Design design);

/// Parse then elaborate; a parse failure is rethrown as an Error carrying the
/// first diagnostic.
ElaboratedDesign load_design(std::string_view source);

/// Signals written and read by one statement. Headers define nothing; index
/// expressions of memory writes count as uses.
DefUse def_use(const Design& design, const Statement& stmt);

std::string pretty_print(const Design& design);
std::string print_expr(const Design& design, const Expr& expr);

/// One-line rendering of a statement: the assignment, or the header line of an
/// if/case/begin.
std::string describe_statement(const Design& design, StatementId id);

/// Signal table, statement table and def/use table, one entry per line.
std::string dump_design(const ElaboratedDesign& design);

/// `file:line:col: severity: message`
std::string format_diagnostic(std::string_view file, const Diagnostic& diag);

}  // namespace slicefi
