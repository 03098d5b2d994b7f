#include <algorithm>
#include <functional>
#include <set>

#include "slicefi/frontend.hpp"

namespace slicefi {

namespace {

void collect_uses(const Expr& e, std::set<SignalId>& out) {
  if (e.op == ExprOp::Ref || e.op == ExprOp::MemRead) out.insert(e.signal);
  for (const auto& a : e.args) collect_uses(a, out);
}

class Elaborator {
 public:
  explicit Elaborator(Design design) { static_cast<Design&>(out_) = std::move(design); }

  ElaboratedDesign run() {
    for (auto& s : out_.statements) resolve_statement(s);
    check_targets_and_drivers();
    order_combinational();
    for (const auto& s : out_.statements) out_.defuse.push_back(def_use(out_, s));
    for (const auto& sig : out_.signals) {
      if (sig.kind == SignalKind::Input && sig.id != out_.clock) out_.stimulus_inputs.push_back(sig.id);
    }
    out_.memory_base.assign(out_.signals.size(), 0);
    for (const auto& sig : out_.signals) {
      if (sig.kind != SignalKind::Memory) continue;
      out_.memory_base[sig.id] = out_.memory_words;
      out_.memory_words += sig.depth;
    }
    return std::move(out_);
  }

 private:
  [[noreturn]] static void fail(ErrorKind kind, SourceLoc loc, const std::string& msg) {
    throw Error(kind, msg, loc);
  }

  const SignalDecl& sig(SignalId id) const { return out_.signals[id]; }

  void resolve_width(Expr& e) {
    for (auto& a : e.args) resolve_width(a);
    auto arg_width = [&](std::size_t i) { return e.args[i].width; };
    switch (e.op) {
      case ExprOp::Const:
        break;
      case ExprOp::Ref:
        e.width = sig(e.signal).width;
        break;
      case ExprOp::MemRead: {
        const auto& m = sig(e.signal);
        e.width = m.width;
        const Expr& row = e.args[0];
        if (row.op == ExprOp::Const && row.value >= m.depth) {
          fail(ErrorKind::IndexOutOfRange, e.loc,
               "row " + std::to_string(row.value) + " is outside memory '" + m.name + "' of depth " +
                   std::to_string(m.depth));
        }
        break;
      }
      case ExprOp::BitSelect: {
        const Expr& idx = e.args[1];
        if (idx.op == ExprOp::Const && idx.value >= arg_width(0)) {
          fail(ErrorKind::IndexOutOfRange, e.loc,
               "bit " + std::to_string(idx.value) + " is outside a " + std::to_string(arg_width(0)) +
                   "-bit value");
        }
        e.width = 1;
        break;
      }
      case ExprOp::PartSelect:
        if (e.msb >= arg_width(0)) {
          fail(ErrorKind::IndexOutOfRange, e.loc,
               "part-select [" + std::to_string(e.msb) + ":" + std::to_string(e.lsb) + "] is outside a " +
                   std::to_string(arg_width(0)) + "-bit value");
        }
        e.width = e.msb - e.lsb + 1;
        break;
      case ExprOp::BitNot:
      case ExprOp::Neg:
        e.width = arg_width(0);
        break;
      case ExprOp::LogNot:
      case ExprOp::RedAnd:
      case ExprOp::RedOr:
      case ExprOp::RedXor:
      case ExprOp::LogAnd:
      case ExprOp::LogOr:
      case ExprOp::Eq:
      case ExprOp::Neq:
      case ExprOp::Lt:
      case ExprOp::Le:
      case ExprOp::Gt:
      case ExprOp::Ge:
        e.width = 1;
        break;
      case ExprOp::And:
      case ExprOp::Or:
      case ExprOp::Xor:
      case ExprOp::Add:
      case ExprOp::Sub:
        e.width = std::max(arg_width(0), arg_width(1));
        break;
      case ExprOp::Shl:
      case ExprOp::Shr:
        e.width = arg_width(0);
        break;
      case ExprOp::Concat: {
        unsigned total = 0;
        for (const auto& a : e.args) total += a.width;
        if (total > kMaxWidth) fail(ErrorKind::WidthMismatch, e.loc, "concatenation wider than 64 bits");
        e.width = total;
        break;
      }
      case ExprOp::Mux:
        e.width = std::max(arg_width(1), arg_width(2));
        break;
    }
  }

  void resolve_statement(Statement& s) {
    if (s.kind == StatementKind::Block) return;
    resolve_width(s.expr);
    for (auto& item : s.items) {
      for (auto& label : item.labels) resolve_width(label);
    }
    if (!s.target) return;
    Target& t = *s.target;
    const SignalDecl& d = sig(t.signal);
    if (t.row) {
      resolve_width(*t.row);
      if (t.row->op == ExprOp::Const && t.row->value >= d.depth) {
        fail(ErrorKind::IndexOutOfRange, s.loc,
             "row " + std::to_string(t.row->value) + " is outside memory '" + d.name + "' of depth " +
                 std::to_string(d.depth));
      }
    }
    if (t.msb >= d.width || t.lsb > t.msb) {
      fail(ErrorKind::IndexOutOfRange, s.loc, "assignment range is outside '" + d.name + "'");
    }
    unsigned target_width = t.msb - t.lsb + 1;
    if (s.expr.width > target_width) {
      fail(ErrorKind::WidthMismatch, s.loc,
           "right-hand side is " + std::to_string(s.expr.width) + " bits but '" + d.name + "' target is " +
               std::to_string(target_width) + " bits");
    }
  }

  void check_targets_and_drivers() {
    // driver process per signal: sequential processes for storage, assigns for nets
    std::vector<std::optional<std::size_t>> driver(out_.signals.size());
    for (std::size_t p = 0; p < out_.processes.size(); ++p) {
      const Process& proc = out_.processes[p];
      std::set<SignalId> written;
      std::function<void(StatementId)> walk = [&](StatementId id) {
        const Statement& s = out_.statements[id];
        if (s.target) {
          const SignalDecl& d = sig(s.target->signal);
          bool sequential = s.kind == StatementKind::NonBlockingAssign;
          if (sequential && !d.is_storage()) {
            fail(ErrorKind::IllegalTarget, s.loc,
                 "'" + d.name + "' is not a reg and cannot be assigned in an always block");
          }
          if (!sequential && d.kind != SignalKind::Wire && d.kind != SignalKind::Output) {
            fail(ErrorKind::IllegalTarget, s.loc,
                 "'" + d.name + "' is not a wire or output and cannot be driven by assign");
          }
          written.insert(d.id);
        }
        for (StatementId c : s.children) walk(c);
      };
      walk(proc.root);
      for (SignalId w : written) {
        if (driver[w] && *driver[w] != p) {
          fail(ErrorKind::MultipleDrivers, proc.loc, "'" + sig(w).name + "' is driven by more than one process");
        }
        driver[w] = p;
      }
    }
    for (const auto& d : out_.signals) {
      if (d.kind == SignalKind::Output && !driver[d.id]) {
        fail(ErrorKind::UndrivenOutput, d.loc, "output '" + d.name + "' is never driven");
      }
    }
  }

  // Topological order of continuous assigns over net-to-net reads; reports
  // the first cycle found as `a -> b -> a`, following read edges.
  void order_combinational() {
    std::vector<std::optional<StatementId>> net_driver(out_.signals.size());
    for (const auto& p : out_.processes) {
      if (p.kind == ProcessKind::Combinational) net_driver[out_.statements[p.root].target->signal] = p.root;
    }
    auto reads = [&](SignalId net) {
      std::vector<SignalId> r;
      if (!net_driver[net]) return r;
      std::set<SignalId> uses;
      collect_uses(out_.statements[*net_driver[net]].expr, uses);
      for (SignalId u : uses) {
        if (net_driver[u]) r.push_back(u);
      }
      return r;
    };

    enum class Mark { None, Active, Done };
    std::vector<Mark> mark(out_.signals.size(), Mark::None);
    std::vector<SignalId> stack;
    std::function<void(SignalId)> visit = [&](SignalId n) {
      mark[n] = Mark::Active;
      stack.push_back(n);
      for (SignalId m : reads(n)) {
        if (mark[m] == Mark::Active) {
          auto it = std::find(stack.begin(), stack.end(), m);
          std::string path;
          for (; it != stack.end(); ++it) path += sig(*it).name + " -> ";
          path += sig(m).name;
          fail(ErrorKind::CombinationalLoop, out_.statements[*net_driver[n]].loc,
               "combinational loop: " + path);
        }
        if (mark[m] == Mark::None) visit(m);
      }
      stack.pop_back();
      mark[n] = Mark::Done;
      out_.comb_order.push_back(*net_driver[n]);
    };
    for (const auto& d : out_.signals) {
      if (net_driver[d.id] && mark[d.id] == Mark::None) visit(d.id);
    }
  }

  ElaboratedDesign out_;
};

}  // namespace

DefUse def_use(const Design& design, const Statement& stmt) {
  (void)design;
  DefUse du;
  if (stmt.kind == StatementKind::Block) return du;
  std::set<SignalId> uses;
  collect_uses(stmt.expr, uses);
  for (const auto& item : stmt.items) {
    for (const auto& label : item.labels) collect_uses(label, uses);
  }
  if (stmt.target) {
    du.def.push_back(stmt.target->signal);
    if (stmt.target->row) collect_uses(*stmt.target->row, uses);
  }
  du.use.assign(uses.begin(), uses.end());
  return du;
}

ElaboratedDesign elaborate(Design design) { return Elaborator(std::move(design)).run(); }

std::vector<StatementId> ElaboratedDesign::sliceable_statements() const {
  std::vector<StatementId> ids;
  for (const auto& s : statements) {
    if (s.sliceable()) ids.push_back(s.id);
  }
  return ids;
}

std::string_view to_string(SignalKind kind) {
  switch (kind) {
    case SignalKind::Input: return "input";
    case SignalKind::Output: return "output";
    case SignalKind::Wire: return "wire";
    case SignalKind::Reg: return "reg";
    case SignalKind::Memory: return "memory";
  }
  return "?";
}

std::string_view to_string(StatementKind kind) {
  switch (kind) {
    case StatementKind::NonBlockingAssign: return "nonblocking";
    case StatementKind::ContinuousAssign: return "assign";
    case StatementKind::If: return "if";
    case StatementKind::Case: return "case";
    case StatementKind::Block: return "block";
  }
  return "?";
}

}  // namespace slicefi
