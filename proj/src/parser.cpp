#include <unordered_map>
#include <utility>

#include "lexer.hpp"
#include "slicefi/frontend.hpp"

namespace slicefi {

namespace {

using detail::Tok;
using detail::Token;

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Design run() {
    expect_keyword("module");
    design_.name = expect_ident().text;
    std::vector<std::pair<std::string, SourceLoc>> ports;
    expect("(");
    if (!accept(")")) {
      do {
        const Token& t = expect_ident();
        ports.emplace_back(t.text, t.loc);
      } while (accept(","));
      expect(")");
    }
    expect(";");

    while (!at_keyword("endmodule")) {
      if (peek().kind == Tok::End) fail(peek().loc, "expected 'endmodule'");
      parse_item();
    }
    expect_keyword("endmodule");
    if (peek().kind != Tok::End) fail(peek().loc, "unexpected text after 'endmodule'");

    for (const auto& [name, loc] : ports) {
      auto id = design_.find_signal(name);
      if (!id) throw Error(ErrorKind::UnknownSignal, "port '" + name + "' is never declared", loc);
      auto kind = design_.signal(*id).kind;
      if (kind != SignalKind::Input && kind != SignalKind::Output) {
        throw Error(ErrorKind::SyntaxError, "port '" + name + "' must be declared input or output", loc);
      }
      design_.ports.push_back(name);
    }
    if (!design_.clock) {
      if (auto clk = design_.find_signal("clk"); clk && design_.signal(*clk).kind == SignalKind::Input) {
        design_.clock = clk;
      }
    }
    return std::move(design_);
  }

 private:
  // ---- token helpers ----
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at_punct(std::string_view p) const { return peek().kind == Tok::Punct && peek().text == p; }
  bool at_keyword(std::string_view k) const { return peek().kind == Tok::Keyword && peek().text == k; }
  bool accept(std::string_view p) {
    if (!at_punct(p)) return false;
    next();
    return true;
  }
  bool accept_keyword(std::string_view k) {
    if (!at_keyword(k)) return false;
    next();
    return true;
  }
  [[noreturn]] static void fail(SourceLoc loc, const std::string& msg) {
    throw Error(ErrorKind::SyntaxError, msg, loc);
  }
  static std::string describe(const Token& t) {
    return t.kind == Tok::End ? std::string("end of input") : "'" + t.text + "'";
  }
  const Token& expect(std::string_view p) {
    if (!at_punct(p)) fail(peek().loc, "expected '" + std::string(p) + "' but found " + describe(peek()));
    return next();
  }
  const Token& expect_keyword(std::string_view k) {
    if (!at_keyword(k)) fail(peek().loc, "expected '" + std::string(k) + "' but found " + describe(peek()));
    return next();
  }
  const Token& expect_ident() {
    if (peek().kind != Tok::Ident) fail(peek().loc, "expected identifier but found " + describe(peek()));
    return next();
  }
  unsigned expect_const(const char* what) {
    const Token& t = peek();
    if (t.kind != Tok::Number) fail(t.loc, std::string("expected constant ") + what);
    Word v = next().value;
    if (v > 0xFFFFFFFFu) fail(t.loc, std::string(what) + " is too large");
    return static_cast<unsigned>(v);
  }

  SignalId resolve(const Token& t) {
    auto it = names_.find(t.text);
    if (it == names_.end()) throw Error(ErrorKind::UnknownSignal, "unknown signal '" + t.text + "'", t.loc);
    return it->second;
  }

  // ---- module items ----
  void parse_item() {
    const Token& t = peek();
    if (t.kind == Tok::Keyword) {
      if (t.text == "input" || t.text == "output" || t.text == "wire" || t.text == "reg") {
        parse_declaration();
        return;
      }
      if (t.text == "assign") {
        parse_continuous_assign();
        return;
      }
      if (t.text == "always") {
        parse_always();
        return;
      }
    }
    fail(t.loc, "expected a declaration, 'assign' or 'always' but found " + describe(t));
  }

  // `[msb:0]` on a declaration; returns the width.
  unsigned parse_decl_range() {
    if (!accept("[")) return 1;
    SourceLoc loc = peek().loc;
    unsigned msb = expect_const("range bound");
    expect(":");
    unsigned lsb = expect_const("range bound");
    expect("]");
    if (lsb != 0) fail(loc, "only [N:0] ranges are supported");
    if (msb + 1 > kMaxWidth) fail(loc, "signals are limited to 64 bits");
    return msb + 1;
  }

  void parse_declaration() {
    const Token& kw = next();
    SignalKind kind = kw.text == "input"    ? SignalKind::Input
                      : kw.text == "output" ? SignalKind::Output
                      : kw.text == "wire"   ? SignalKind::Wire
                                            : SignalKind::Reg;
    if ((kind == SignalKind::Input || kind == SignalKind::Output) && at_keyword("wire")) next();
    if (kind == SignalKind::Output && at_keyword("reg")) {
      fail(peek().loc, "'output reg' is not supported; drive outputs with 'assign'");
    }
    unsigned width = parse_decl_range();
    do {
      const Token& name = expect_ident();
      SignalDecl decl;
      decl.name = name.text;
      decl.kind = kind;
      decl.width = width;
      decl.loc = name.loc;
      if (kind == SignalKind::Reg && at_punct("[")) {
        SourceLoc loc = next().loc;
        unsigned a = expect_const("memory bound");
        expect(":");
        unsigned b = expect_const("memory bound");
        expect("]");
        if (std::min(a, b) != 0) fail(loc, "memory ranges must be [0:D-1]");
        decl.kind = SignalKind::Memory;
        decl.depth = std::max(a, b) + 1;
      }
      if (names_.count(decl.name) != 0) {
        throw Error(ErrorKind::DuplicateName, "duplicate declaration of '" + decl.name + "'", name.loc);
      }
      decl.id = static_cast<SignalId>(design_.signals.size());
      names_.emplace(decl.name, decl.id);
      design_.signals.push_back(std::move(decl));
    } while (accept(","));
    expect(";");
  }

  StatementId new_statement(StatementKind kind, SourceLoc loc, std::optional<StatementId> parent) {
    Statement s;
    s.id = static_cast<StatementId>(design_.statements.size());
    s.kind = kind;
    s.loc = loc;
    s.parent = parent;
    design_.statements.push_back(std::move(s));
    return design_.statements.back().id;
  }
  Statement& stmt(StatementId id) { return design_.statements[id]; }

  void parse_continuous_assign() {
    SourceLoc loc = next().loc;
    const Token& name = expect_ident();
    SignalId sig = resolve(name);
    if (at_punct("[")) fail(peek().loc, "continuous assignments must target a whole signal");
    expect("=");
    Expr rhs = parse_expr();
    expect(";");
    StatementId id = new_statement(StatementKind::ContinuousAssign, loc, std::nullopt);
    Target target;
    target.signal = sig;
    target.msb = design_.signal(sig).width - 1;
    stmt(id).target = std::move(target);
    stmt(id).expr = std::move(rhs);
    design_.processes.push_back({ProcessKind::Combinational, id, loc});
  }

  void parse_always() {
    SourceLoc loc = next().loc;
    expect("@");
    expect("(");
    expect_keyword("posedge");
    const Token& clk = expect_ident();
    SignalId clock = resolve(clk);
    if (design_.signal(clock).kind != SignalKind::Input) fail(clk.loc, "clock must be an input");
    if (design_.clock && *design_.clock != clock) fail(clk.loc, "only a single clock is supported");
    design_.clock = clock;
    expect(")");
    StatementId root = parse_statement(std::nullopt);
    design_.processes.push_back({ProcessKind::Sequential, root, loc});
  }

  StatementId parse_statement(std::optional<StatementId> parent) {
    const Token& t = peek();
    if (accept_keyword("begin")) {
      StatementId id = new_statement(StatementKind::Block, t.loc, parent);
      while (!at_keyword("end")) {
        if (peek().kind == Tok::End) fail(peek().loc, "expected 'end'");
        StatementId child = parse_statement(id);
        stmt(id).children.push_back(child);
      }
      next();
      return id;
    }
    if (accept_keyword("if")) {
      StatementId id = new_statement(StatementKind::If, t.loc, parent);
      expect("(");
      Expr cond = parse_expr();
      expect(")");
      stmt(id).expr = std::move(cond);
      StatementId then_id = parse_statement(id);
      stmt(id).children.push_back(then_id);
      if (accept_keyword("else")) {
        StatementId else_id = parse_statement(id);
        stmt(id).children.push_back(else_id);
      }
      return id;
    }
    if (accept_keyword("case")) {
      StatementId id = new_statement(StatementKind::Case, t.loc, parent);
      expect("(");
      Expr sel = parse_expr();
      expect(")");
      stmt(id).expr = std::move(sel);
      bool seen_default = false;
      while (!accept_keyword("endcase")) {
        if (peek().kind == Tok::End) fail(peek().loc, "expected 'endcase'");
        CaseItem item;
        if (at_keyword("default")) {
          if (seen_default) fail(peek().loc, "duplicate default item");
          seen_default = true;
          next();
          accept(":");
        } else {
          do {
            item.labels.push_back(parse_expr());
          } while (accept(","));
          expect(":");
        }
        item.body = parse_statement(id);
        stmt(id).children.push_back(item.body);
        stmt(id).items.push_back(std::move(item));
      }
      return id;
    }
    if (t.kind == Tok::Ident) return parse_nonblocking(parent);
    fail(t.loc, "expected a statement but found " + describe(t));
  }

  StatementId parse_nonblocking(std::optional<StatementId> parent) {
    const Token& name = next();
    SignalId sig = resolve(name);
    const SignalDecl& decl = design_.signal(sig);
    Target target;
    target.signal = sig;
    target.msb = decl.width - 1;
    if (decl.kind == SignalKind::Memory) {
      expect("[");
      target.row = parse_expr();
      expect("]");
      if (at_punct("[")) fail(peek().loc, "bit-selects on memory writes are not supported");
    } else if (at_punct("[")) {
      next();
      if (peek().kind != Tok::Number) fail(peek().loc, "bit-selects on assignment targets must be constant");
      unsigned msb = expect_const("bit index");
      unsigned lsb = msb;
      if (accept(":")) lsb = expect_const("bit index");
      expect("]");
      target.msb = msb;
      target.lsb = lsb;
      target.bit_range = true;
    }
    if (at_punct("=")) fail(peek().loc, "blocking assignments are not supported; use '<='");
    expect("<=");
    Expr rhs = parse_expr();
    expect(";");
    StatementId id = new_statement(StatementKind::NonBlockingAssign, name.loc, parent);
    stmt(id).target = std::move(target);
    stmt(id).expr = std::move(rhs);
    return id;
  }

  // ---- expressions ----
  static Expr make(ExprOp op, SourceLoc loc, std::vector<Expr> args) {
    Expr e;
    e.op = op;
    e.loc = loc;
    e.args = std::move(args);
    return e;
  }

  Expr parse_expr() {
    Expr cond = parse_binary(0);
    if (at_punct("?")) {
      SourceLoc loc = next().loc;
      Expr a = parse_expr();
      expect(":");
      Expr b = parse_expr();
      return make(ExprOp::Mux, loc, {std::move(cond), std::move(a), std::move(b)});
    }
    return cond;
  }

  struct BinOp {
    std::string_view text;
    ExprOp op;
    int prec;
  };

  static const BinOp* binop(const Token& t) {
    static constexpr BinOp kOps[] = {
        {"||", ExprOp::LogOr, 1}, {"&&", ExprOp::LogAnd, 2}, {"|", ExprOp::Or, 3},
        {"^", ExprOp::Xor, 4},    {"&", ExprOp::And, 5},     {"==", ExprOp::Eq, 6},
        {"!=", ExprOp::Neq, 6},   {"<", ExprOp::Lt, 7},      {"<=", ExprOp::Le, 7},
        {">", ExprOp::Gt, 7},     {">=", ExprOp::Ge, 7},     {"<<", ExprOp::Shl, 8},
        {">>", ExprOp::Shr, 8},   {"+", ExprOp::Add, 9},     {"-", ExprOp::Sub, 9},
    };
    if (t.kind != Tok::Punct) return nullptr;
    for (const auto& op : kOps) {
      if (t.text == op.text) return &op;
    }
    return nullptr;
  }

  // Precedence climbing; all binary operators are left-associative.
  Expr parse_binary(int min_prec) {
    Expr lhs = parse_unary();
    for (;;) {
      const BinOp* op = binop(peek());
      if (!op || op->prec <= min_prec) return lhs;
      SourceLoc loc = next().loc;
      Expr rhs = parse_binary(op->prec);
      lhs = make(op->op, loc, {std::move(lhs), std::move(rhs)});
    }
  }

  Expr parse_unary() {
    const Token& t = peek();
    if (t.kind == Tok::Punct) {
      ExprOp op;
      bool unary = true;
      if (t.text == "~") op = ExprOp::BitNot;
      else if (t.text == "!") op = ExprOp::LogNot;
      else if (t.text == "-") op = ExprOp::Neg;
      else if (t.text == "&") op = ExprOp::RedAnd;
      else if (t.text == "|") op = ExprOp::RedOr;
      else if (t.text == "^") op = ExprOp::RedXor;
      else unary = false;
      if (unary) {
        SourceLoc loc = next().loc;
        return make(op, loc, {parse_unary()});
      }
    }
    return parse_primary();
  }

  Expr parse_primary() {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      next();
      Expr e = Expr::constant(t.value, t.width, t.sized);
      e.loc = t.loc;
      return e;
    }
    if (accept("(")) {
      Expr e = parse_expr();
      expect(")");
      return e;
    }
    if (at_punct("{")) {
      SourceLoc loc = next().loc;
      std::vector<Expr> parts;
      do {
        parts.push_back(parse_expr());
      } while (accept(","));
      expect("}");
      return make(ExprOp::Concat, loc, std::move(parts));
    }
    if (t.kind == Tok::Ident) {
      next();
      SignalId sig = resolve(t);
      Expr base;
      base.loc = t.loc;
      base.signal = sig;
      if (design_.signal(sig).kind == SignalKind::Memory) {
        if (!at_punct("[")) fail(peek().loc, "memory '" + t.text + "' must be indexed");
        next();
        base.op = ExprOp::MemRead;
        base.args.push_back(parse_expr());
        expect("]");
      } else {
        base.op = ExprOp::Ref;
      }
      if (at_punct("[")) return parse_select(std::move(base));
      return base;
    }
    fail(t.loc, "expected an expression but found " + describe(t));
  }

  Expr parse_select(Expr base) {
    SourceLoc loc = expect("[").loc;
    Expr index = parse_expr();
    if (accept(":")) {
      if (index.op != ExprOp::Const) fail(loc, "part-select bounds must be constant");
      unsigned lsb = expect_const("part-select bound");
      expect("]");
      Expr e = make(ExprOp::PartSelect, loc, {std::move(base)});
      e.msb = static_cast<unsigned>(index.value);
      e.lsb = lsb;
      if (e.msb < e.lsb) fail(loc, "part-select must be written [msb:lsb] with msb >= lsb");
      return e;
    }
    expect("]");
    return make(ExprOp::BitSelect, loc, {std::move(base), std::move(index)});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Design design_;
  std::unordered_map<std::string, SignalId> names_;
};

}  // namespace

std::optional<SignalId> Design::find_signal(std::string_view name) const {
  for (const auto& s : signals) {
    if (s.name == name) return s.id;
  }
  return std::nullopt;
}

ParseResult parse_design(std::string_view source) {
  ParseResult result;
  try {
    result.design = Parser(detail::tokenize(source)).run();
  } catch (const Error& e) {
    result.diagnostics.push_back({e.loc().value_or(SourceLoc{}), e.kind(), e.what()});
  }
  return result;
}

ElaboratedDesign load_design(std::string_view source) {
  ParseResult parsed = parse_design(source);
  if (!parsed.ok()) {
    const Diagnostic& d = parsed.diagnostics.front();
    throw Error(d.kind, d.message, d.loc);
  }
  return elaborate(std::move(*parsed.design));
}

std::string format_diagnostic(std::string_view file, const Diagnostic& diag) {
  return std::string(file) + ":" + std::to_string(diag.loc.line) + ":" + std::to_string(diag.loc.column) +
         ": error: " + diag.message;
}

}  // namespace slicefi
