#include "slicefi/depgraph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "slicefi/frontend.hpp"

namespace slicefi {

namespace {

void collect_guarded(const ElaboratedDesign& d, StatementId id, std::vector<StatementId>& out) {
  for (StatementId c : d.statements[id].children) {
    if (d.statements[c].sliceable()) out.push_back(c);
    collect_guarded(d, c, out);
  }
}

}  // namespace

Pdg build_pdg(const ElaboratedDesign& d) {
  Pdg g;
  g.definers.resize(d.signals.size());
  g.users.resize(d.signals.size());
  g.predecessors.resize(d.statements.size());
  g.nodes = d.sliceable_statements();
  for (StatementId id : g.nodes) {
    for (SignalId s : d.defuse[id].def) g.definers[s].push_back(id);
    for (SignalId s : d.defuse[id].use) g.users[s].push_back(id);
  }

  std::set<PdgEdge> edges;
  for (std::size_t s = 0; s < d.signals.size(); ++s) {
    for (StatementId a : g.definers[s]) {
      for (StatementId b : g.users[s]) edges.insert({a, b, EdgeKind::Data});
    }
  }
  for (StatementId h : g.nodes) {
    if (!d.statements[h].is_header()) continue;
    std::vector<StatementId> guarded;
    collect_guarded(d, h, guarded);
    for (StatementId b : guarded) edges.insert({h, b, EdgeKind::Control});
  }
  g.edges.assign(edges.begin(), edges.end());
  for (const auto& e : g.edges) g.predecessors[e.to].push_back(e.from);
  for (auto& p : g.predecessors) {
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
  }
  return g;
}

bool StaticSlice::contains(StatementId id) const { return std::binary_search(statements.begin(), statements.end(), id); }

bool StaticSlice::has_register(SignalId id) const { return std::binary_search(registers.begin(), registers.end(), id); }

StaticSlice static_slice(const Pdg& pdg, const ElaboratedDesign& d, std::span<const SignalId> observation) {
  if (observation.empty()) throw Error(ErrorKind::EmptyCriterion, "observation list is empty");
  StaticSlice slice;
  std::vector<bool> in_slice(d.statements.size(), false);
  std::deque<StatementId> work;
  for (SignalId s : observation) {
    if (s >= d.signals.size()) {
      throw Error(ErrorKind::UnknownObservationSignal, "observation signal id " + std::to_string(s) + " does not exist");
    }
    slice.criterion.push_back(s);
    for (StatementId def : pdg.definers[s]) {
      if (!in_slice[def]) {
        in_slice[def] = true;
        work.push_back(def);
      }
    }
  }
  if (work.empty()) {
    throw Error(ErrorKind::EmptyCriterion, "no statement defines any observation signal");
  }
  while (!work.empty()) {
    StatementId id = work.front();
    work.pop_front();
    for (StatementId p : pdg.predecessors[id]) {
      if (!in_slice[p]) {
        in_slice[p] = true;
        work.push_back(p);
      }
    }
  }
  std::sort(slice.criterion.begin(), slice.criterion.end());
  slice.criterion.erase(std::unique(slice.criterion.begin(), slice.criterion.end()), slice.criterion.end());

  std::set<SignalId> regs;
  for (StatementId id = 0; id < in_slice.size(); ++id) {
    if (!in_slice[id]) continue;
    slice.statements.push_back(id);
    for (const auto* set : {&d.defuse[id].def, &d.defuse[id].use}) {
      for (SignalId s : *set) {
        if (d.signal(s).is_storage()) regs.insert(s);
      }
    }
  }
  slice.registers.assign(regs.begin(), regs.end());
  return slice;
}

std::string format_edge_list(const Pdg& pdg) {
  std::ostringstream os;
  for (const auto& e : pdg.edges) {
    os << e.from << (e.kind == EdgeKind::Data ? " data " : " control ") << e.to << '\n';
  }
  return os.str();
}

std::string format_slice(const ElaboratedDesign& d, const StaticSlice& slice) {
  std::ostringstream os;
  os << "criterion:";
  for (SignalId s : slice.criterion) os << ' ' << d.signal(s).name;
  os << "\nstatements: " << slice.statements.size() << '\n';
  for (StatementId id : slice.statements) {
    os << "S" << id << " line " << d.statement(id).loc.line << ": " << describe_statement(d, id) << '\n';
  }
  os << "registers:";
  for (SignalId s : slice.registers) os << ' ' << d.signal(s).name;
  os << '\n';
  return os.str();
}

}  // namespace slicefi
