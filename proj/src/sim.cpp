#include "slicefi/sim.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace slicefi {

namespace {

struct EvalContext {
  const ElaboratedDesign& design;
  IndexPolicy policy;
  std::size_t cycle;
  StatementId statement = 0;
  std::vector<MemoryRead>* reads = nullptr;
};

[[noreturn]] void index_out_of_range(const EvalContext& ctx, SignalId mem, Word row) {
  throw Error(ErrorKind::MemoryIndexOutOfRange,
              "memory '" + ctx.design.signal(mem).name + "' indexed at row " + std::to_string(row) + " in cycle " +
                  std::to_string(ctx.cycle));
}

Word eval(const Expr& e, const SimState& st, EvalContext& ctx) {
  const Word m = width_mask(e.width);
  auto arg = [&](std::size_t i) { return eval(e.args[i], st, ctx); };
  switch (e.op) {
    case ExprOp::Const:
      return e.value & m;
    case ExprOp::Ref:
      return st.value(e.signal);
    case ExprOp::MemRead: {
      Word row = arg(0);
      const SignalDecl& mem = ctx.design.signal(e.signal);
      if (row >= mem.depth) {
        if (ctx.policy == IndexPolicy::Strict) index_out_of_range(ctx, e.signal, row);
        return 0;
      }
      if (ctx.reads) ctx.reads->push_back({ctx.statement, e.signal, static_cast<std::uint32_t>(row)});
      return st.row(ctx.design, e.signal, row);
    }
    case ExprOp::BitSelect: {
      Word base = arg(0);
      Word idx = arg(1);
      return idx >= e.args[0].width ? 0 : (base >> idx) & 1;
    }
    case ExprOp::PartSelect:
      return (arg(0) >> e.lsb) & m;
    case ExprOp::BitNot:
      return ~arg(0) & m;
    case ExprOp::LogNot:
      return arg(0) == 0;
    case ExprOp::Neg:
      return (~arg(0) + 1) & m;
    case ExprOp::RedAnd:
      return arg(0) == width_mask(e.args[0].width);
    case ExprOp::RedOr:
      return arg(0) != 0;
    case ExprOp::RedXor:
      return static_cast<Word>(std::popcount(arg(0)) & 1);
    case ExprOp::And:
      return arg(0) & arg(1);
    case ExprOp::Or:
      return arg(0) | arg(1);
    case ExprOp::Xor:
      return arg(0) ^ arg(1);
    case ExprOp::LogAnd: {
      bool a = arg(0) != 0;
      bool b = arg(1) != 0;
      return a && b;
    }
    case ExprOp::LogOr: {
      bool a = arg(0) != 0;
      bool b = arg(1) != 0;
      return a || b;
    }
    case ExprOp::Add:
      return (arg(0) + arg(1)) & m;
    case ExprOp::Sub:
      return (arg(0) - arg(1)) & m;
    case ExprOp::Eq:
      return arg(0) == arg(1);
    case ExprOp::Neq:
      return arg(0) != arg(1);
    case ExprOp::Lt:
      return arg(0) < arg(1);
    case ExprOp::Le:
      return arg(0) <= arg(1);
    case ExprOp::Gt:
      return arg(0) > arg(1);
    case ExprOp::Ge:
      return arg(0) >= arg(1);
    case ExprOp::Shl: {
      Word a = arg(0);
      Word s = arg(1);
      return s >= 64 ? 0 : (a << s) & m;
    }
    case ExprOp::Shr: {
      Word a = arg(0);
      Word s = arg(1);
      return s >= 64 ? 0 : a >> s;
    }
    case ExprOp::Concat: {
      Word acc = 0;
      for (const auto& a : e.args) {
        Word v = eval(a, st, ctx);
        acc = a.width >= 64 ? v : (acc << a.width) | v;
      }
      return acc & m;
    }
    case ExprOp::Mux:
      // Only the selected branch is evaluated, so memory reads recorded in the
      // golden run are exactly those a fault-free evaluation performs.
      return arg(0) != 0 ? eval(e.args[1], st, ctx) : eval(e.args[2], st, ctx);
  }
  return 0;
}

void settle(const ElaboratedDesign& d, SimState& st, EvalContext& ctx) {
  for (StatementId id : d.comb_order) {
    const Statement& s = d.statements[id];
    ctx.statement = id;
    st.set_value(s.target->signal, eval(s.expr, st, ctx));
  }
}

struct PendingWrite {
  CommittedWrite write;
  bool valid = true;
};

class ProcessRunner {
 public:
  ProcessRunner(const ElaboratedDesign& d, const SimState& st, EvalContext& ctx, std::vector<StatementId>* executed,
                std::vector<PendingWrite>& pending)
      : d_(d), st_(st), ctx_(ctx), executed_(executed), pending_(pending) {}

  void run(StatementId id) {
    const Statement& s = d_.statements[id];
    if (s.sliceable() && executed_) executed_->push_back(id);
    ctx_.statement = id;
    switch (s.kind) {
      case StatementKind::Block:
        for (StatementId c : s.children) run(c);
        return;
      case StatementKind::If:
        if (eval(s.expr, st_, ctx_) != 0) run(s.children[0]);
        else if (s.children.size() > 1) run(s.children[1]);
        return;
      case StatementKind::Case: {
        Word sel = eval(s.expr, st_, ctx_);
        const CaseItem* fallback = nullptr;
        for (const auto& item : s.items) {
          if (item.labels.empty()) {
            fallback = &item;
            continue;
          }
          for (const auto& label : item.labels) {
            ctx_.statement = id;
            if (eval(label, st_, ctx_) == sel) {
              run(item.body);
              return;
            }
          }
        }
        if (fallback) run(fallback->body);
        return;
      }
      case StatementKind::NonBlockingAssign:
        assign(s);
        return;
      case StatementKind::ContinuousAssign:
        return;
    }
  }

 private:
  void assign(const Statement& s) {
    const Target& t = *s.target;
    const SignalDecl& decl = d_.signal(t.signal);
    PendingWrite w;
    w.write.signal = t.signal;
    if (t.row) {
      Word row = eval(*t.row, st_, ctx_);
      if (row >= decl.depth) {
        if (ctx_.policy == IndexPolicy::Strict) index_out_of_range(ctx_, t.signal, row);
        w.valid = false;
      }
      w.write.row = static_cast<std::uint32_t>(row);
    }
    Word value = eval(s.expr, st_, ctx_);
    w.write.mask = width_mask(t.msb - t.lsb + 1) << t.lsb;
    w.write.value = (value << t.lsb) & w.write.mask;
    pending_.push_back(w);
  }

  const ElaboratedDesign& d_;
  const SimState& st_;
  EvalContext& ctx_;
  std::vector<StatementId>* executed_;
  std::vector<PendingWrite>& pending_;
};

}  // namespace

SimState::SimState(const ElaboratedDesign& design)
    : values_(design.signals.size(), 0), memory_(design.memory_words, 0) {}

Word& SimState::storage(const ElaboratedDesign& design, SignalId sig, std::size_t row) {
  if (design.signal(sig).kind == SignalKind::Memory) return memory_[design.memory_base[sig] + row];
  return values_[sig];
}

Word evaluate_expr(const ElaboratedDesign& design, const SimState& state, const Expr& expr, IndexPolicy policy) {
  EvalContext ctx{design, policy, 0};
  return eval(expr, state, ctx);
}

CycleResult evaluate_cycle(const ElaboratedDesign& d, SimState& st, std::span<const Word> inputs,
                           const CycleOptions& options) {
  if (inputs.size() != d.stimulus_inputs.size()) {
    throw Error(ErrorKind::StimulusFormat, "cycle " + std::to_string(options.cycle) + " supplies " +
                                               std::to_string(inputs.size()) + " inputs, design has " +
                                               std::to_string(d.stimulus_inputs.size()));
  }
  CycleResult result;
  EvalContext ctx{d, options.policy, options.cycle};
  if (options.record) ctx.reads = &result.reads;

  for (std::size_t i = 0; i < inputs.size(); ++i) {
    st.set_value(d.stimulus_inputs[i], inputs[i] & width_mask(d.signal(d.stimulus_inputs[i]).width));
  }
  settle(d, st, ctx);
  if (options.record) result.executed = d.comb_order;

  thread_local std::vector<PendingWrite> pending;
  pending.clear();
  ProcessRunner runner(d, st, ctx, options.record ? &result.executed : nullptr, pending);
  for (const auto& p : d.processes) {
    if (p.kind == ProcessKind::Sequential) runner.run(p.root);
  }

  for (const auto& pw : pending) {
    if (!pw.valid) continue;
    Word& word = st.storage(d, pw.write.signal, pw.write.row);
    word = (word & ~pw.write.mask) | pw.write.value;
    if (options.record) result.writes.push_back(pw.write);
  }
  if (options.record) {
    std::sort(result.executed.begin(), result.executed.end());
    std::sort(result.reads.begin(), result.reads.end());
    result.reads.erase(std::unique(result.reads.begin(), result.reads.end()), result.reads.end());
  }
  return result;
}

std::vector<Word> sample_observation(const ElaboratedDesign& d, SimState& st, std::span<const SignalId> observation,
                                     IndexPolicy policy, std::size_t cycle, std::vector<MemoryRead>* reads) {
  EvalContext ctx{d, policy, cycle};
  ctx.reads = reads;
  settle(d, st, ctx);
  std::vector<Word> out;
  out.reserve(observation.size());
  for (SignalId id : observation) out.push_back(st.value(id));
  return out;
}

void validate_observation(const ElaboratedDesign& d, std::span<const SignalId> observation) {
  for (SignalId id : observation) {
    if (id >= d.signals.size()) {
      throw Error(ErrorKind::UnknownObservationSignal, "observation signal id " + std::to_string(id) + " does not exist");
    }
    if (d.signal(id).kind == SignalKind::Memory) {
      throw Error(ErrorKind::UnknownObservationSignal,
                  "memory '" + d.signal(id).name + "' cannot be observed; observe a wire or register");
    }
  }
}

GoldenRun simulate_golden(const ElaboratedDesign& d, const Stimulus& stimulus, std::span<const SignalId> observation) {
  if (stimulus.n_cycles() == 0) throw Error(ErrorKind::EmptyStimulus, "stimulus has no cycles");
  validate_observation(d, observation);
  GoldenRun run;
  run.golden.observation.assign(observation.begin(), observation.end());
  SimState st(d);
  for (std::size_t c = 0; c < stimulus.n_cycles(); ++c) {
    CycleOptions opts;
    opts.cycle = c;
    CycleResult r = evaluate_cycle(d, st, stimulus.rows[c], opts);
    std::vector<MemoryRead> sample_reads;
    run.golden.values.push_back(sample_observation(d, st, observation, IndexPolicy::Strict, c, &sample_reads));
    std::sort(sample_reads.begin(), sample_reads.end());
    sample_reads.erase(std::unique(sample_reads.begin(), sample_reads.end()), sample_reads.end());
    run.coverage.executed.push_back(std::move(r.executed));
    run.access.reads.push_back(std::move(r.reads));
    run.access.sample_reads.push_back(std::move(sample_reads));
    run.access.writes.push_back(std::move(r.writes));
  }
  return run;
}

std::string format_golden_csv(const ElaboratedDesign& d, const GoldenTrace& trace) {
  std::ostringstream os;
  os << "cycle";
  for (SignalId id : trace.observation) os << ',' << d.signal(id).name;
  os << '\n';
  for (std::size_t c = 0; c < trace.values.size(); ++c) {
    os << c;
    for (Word v : trace.values[c]) os << ',' << v;
    os << '\n';
  }
  return os.str();
}

std::string format_coverage_rle(const CoverageTrace& coverage) {
  std::ostringstream os;
  const auto& rows = coverage.executed;
  std::size_t c = 0;
  while (c < rows.size()) {
    std::size_t end = c;
    while (end + 1 < rows.size() && rows[end + 1] == rows[c]) ++end;
    os << c;
    if (end != c) os << '-' << end;
    os << ':';
    for (StatementId id : rows[c]) os << ' ' << id;
    os << '\n';
    c = end + 1;
  }
  return os.str();
}

CoverageTrace parse_coverage_rle(std::string_view text) {
  CoverageTrace cov;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::ConfigError, "malformed coverage line: " + line);
    std::string range = line.substr(0, colon);
    std::size_t first = 0;
    std::size_t last = 0;
    try {
      auto dash = range.find('-');
      first = std::stoul(range.substr(0, dash));
      last = dash == std::string::npos ? first : std::stoul(range.substr(dash + 1));
    } catch (const std::exception&) {
      throw Error(ErrorKind::ConfigError, "malformed coverage range: " + range);
    }
    if (first != cov.executed.size() || last < first) {
      throw Error(ErrorKind::ConfigError, "coverage ranges must be contiguous: " + range);
    }
    std::vector<StatementId> ids;
    std::istringstream ids_in(line.substr(colon + 1));
    StatementId id;
    while (ids_in >> id) ids.push_back(id);
    for (std::size_t c = first; c <= last; ++c) cov.executed.push_back(ids);
  }
  return cov;
}

}  // namespace slicefi
