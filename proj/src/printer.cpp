#include <sstream>

#include "slicefi/frontend.hpp"

namespace slicefi {

namespace {

std::string_view binary_text(ExprOp op) {
  switch (op) {
    case ExprOp::And: return "&";
    case ExprOp::Or: return "|";
    case ExprOp::Xor: return "^";
    case ExprOp::LogAnd: return "&&";
    case ExprOp::LogOr: return "||";
    case ExprOp::Add: return "+";
    case ExprOp::Sub: return "-";
    case ExprOp::Eq: return "==";
    case ExprOp::Neq: return "!=";
    case ExprOp::Lt: return "<";
    case ExprOp::Le: return "<=";
    case ExprOp::Gt: return ">";
    case ExprOp::Ge: return ">=";
    case ExprOp::Shl: return "<<";
    case ExprOp::Shr: return ">>";
    default: return "";
  }
}

std::string_view unary_text(ExprOp op) {
  switch (op) {
    case ExprOp::BitNot: return "~";
    case ExprOp::LogNot: return "!";
    case ExprOp::Neg: return "-";
    case ExprOp::RedAnd: return "&";
    case ExprOp::RedOr: return "|";
    case ExprOp::RedXor: return "^";
    default: return "";
  }
}

bool needs_parens(const Expr& e) {
  return !binary_text(e.op).empty() || !unary_text(e.op).empty() || e.op == ExprOp::Mux;
}

void print(const Design& d, const Expr& e, std::ostream& os);

void print_operand(const Design& d, const Expr& e, std::ostream& os) {
  if (needs_parens(e)) {
    os << '(';
    print(d, e, os);
    os << ')';
  } else {
    print(d, e, os);
  }
}

void print(const Design& d, const Expr& e, std::ostream& os) {
  switch (e.op) {
    case ExprOp::Const:
      if (e.sized) os << e.width << "'d";
      os << e.value;
      return;
    case ExprOp::Ref:
      os << d.signal(e.signal).name;
      return;
    case ExprOp::MemRead:
      os << d.signal(e.signal).name << '[';
      print(d, e.args[0], os);
      os << ']';
      return;
    case ExprOp::BitSelect:
      print(d, e.args[0], os);
      os << '[';
      print(d, e.args[1], os);
      os << ']';
      return;
    case ExprOp::PartSelect:
      print(d, e.args[0], os);
      os << '[' << e.msb << ':' << e.lsb << ']';
      return;
    case ExprOp::Concat:
      os << '{';
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) os << ", ";
        print(d, e.args[i], os);
      }
      os << '}';
      return;
    case ExprOp::Mux:
      print_operand(d, e.args[0], os);
      os << " ? ";
      print_operand(d, e.args[1], os);
      os << " : ";
      print_operand(d, e.args[2], os);
      return;
    default:
      break;
  }
  if (auto u = unary_text(e.op); !u.empty()) {
    os << u;
    print_operand(d, e.args[0], os);
    return;
  }
  print_operand(d, e.args[0], os);
  os << ' ' << binary_text(e.op) << ' ';
  print_operand(d, e.args[1], os);
}

std::string target_text(const Design& d, const Target& t) {
  std::ostringstream os;
  os << d.signal(t.signal).name;
  if (t.row) {
    os << '[';
    print(d, *t.row, os);
    os << ']';
  } else if (t.bit_range) {
    if (t.msb == t.lsb) os << '[' << t.msb << ']';
    else os << '[' << t.msb << ':' << t.lsb << ']';
  }
  return os.str();
}

std::string header_text(const Design& d, const Statement& s) {
  std::ostringstream os;
  switch (s.kind) {
    case StatementKind::NonBlockingAssign:
      os << target_text(d, *s.target) << " <= ";
      print(d, s.expr, os);
      os << ';';
      break;
    case StatementKind::ContinuousAssign:
      os << "assign " << target_text(d, *s.target) << " = ";
      print(d, s.expr, os);
      os << ';';
      break;
    case StatementKind::If:
      os << "if (";
      print(d, s.expr, os);
      os << ')';
      break;
    case StatementKind::Case:
      os << "case (";
      print(d, s.expr, os);
      os << ')';
      break;
    case StatementKind::Block:
      os << "begin";
      break;
  }
  return os.str();
}

void print_statement(const Design& d, StatementId id, int depth, std::ostream& os) {
  const Statement& s = d.statement(id);
  std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  os << pad << header_text(d, s) << '\n';
  switch (s.kind) {
    case StatementKind::Block:
      for (StatementId c : s.children) print_statement(d, c, depth + 1, os);
      os << pad << "end\n";
      break;
    case StatementKind::If:
      print_statement(d, s.children[0], depth + 1, os);
      if (s.children.size() > 1) {
        os << pad << "else\n";
        print_statement(d, s.children[1], depth + 1, os);
      }
      break;
    case StatementKind::Case:
      for (const auto& item : s.items) {
        os << pad << "  ";
        if (item.labels.empty()) {
          os << "default:";
        } else {
          for (std::size_t i = 0; i < item.labels.size(); ++i) {
            if (i) os << ", ";
            print(d, item.labels[i], os);
          }
          os << ':';
        }
        os << '\n';
        print_statement(d, item.body, depth + 2, os);
      }
      os << pad << "endcase\n";
      break;
    default:
      break;
  }
}

}  // namespace

std::string print_expr(const Design& design, const Expr& expr) {
  std::ostringstream os;
  print(design, expr, os);
  return os.str();
}

std::string describe_statement(const Design& design, StatementId id) {
  return header_text(design, design.statement(id));
}

std::string pretty_print(const Design& d) {
  std::ostringstream os;
  os << "module " << d.name << '(';
  for (std::size_t i = 0; i < d.ports.size(); ++i) {
    if (i) os << ", ";
    os << d.ports[i];
  }
  os << ");\n";
  for (const auto& s : d.signals) {
    os << "  " << (s.kind == SignalKind::Memory ? "reg" : to_string(s.kind));
    if (s.width > 1) os << " [" << s.width - 1 << ":0]";
    os << ' ' << s.name;
    if (s.kind == SignalKind::Memory) os << " [0:" << s.depth - 1 << ']';
    os << ";\n";
  }
  for (const auto& p : d.processes) {
    if (p.kind == ProcessKind::Combinational) {
      os << "  " << header_text(d, d.statement(p.root)) << '\n';
    } else {
      os << "  always @(posedge " << d.signal(*d.clock).name << ")\n";
      print_statement(d, p.root, 2, os);
    }
  }
  os << "endmodule\n";
  return os.str();
}

std::string dump_design(const ElaboratedDesign& d) {
  std::ostringstream os;
  os << "module " << d.name << '\n';
  os << "signals " << d.signals.size() << '\n';
  for (const auto& s : d.signals) {
    os << "  " << s.id << ' ' << s.name << ' ' << to_string(s.kind) << " width=" << s.width;
    if (s.kind == SignalKind::Memory) os << " depth=" << s.depth;
    os << '\n';
  }
  std::size_t sequential = 0;
  for (const auto& p : d.processes) sequential += p.kind == ProcessKind::Sequential;
  os << "processes " << d.processes.size() << " (sequential " << sequential << ", assign "
     << d.processes.size() - sequential << ")\n";
  os << "statements " << d.statements.size() << '\n';
  auto names = [&](const std::vector<SignalId>& ids) {
    std::string out = "{";
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i) out += ',';
      out += d.signal(ids[i]).name;
    }
    return out + "}";
  };
  for (const auto& s : d.statements) {
    os << "  S" << s.id << " line " << s.loc.line << ' ' << to_string(s.kind) << " def=" << names(d.defuse[s.id].def)
       << " use=" << names(d.defuse[s.id].use) << " : " << describe_statement(d, s.id) << '\n';
  }
  return os.str();
}

}  // namespace slicefi
