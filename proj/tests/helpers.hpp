#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "slicefi/campaign.hpp"
#include "slicefi/frontend.hpp"

namespace testing {

using namespace slicefi;

inline std::string data_file(const std::string& name) { return read_text_file(std::string(SLICEFI_DATA_DIR) + "/" + name); }
inline std::string bench_file(const std::string& name) {
  return read_text_file(std::string(SLICEFI_BENCH_DIR) + "/" + name);
}

inline PreparedDesign toy() { return prepare_from_text(data_file("toy.mrtl"), data_file("toy.csv"), {"out"}); }

inline SignalId sig(const ElaboratedDesign& d, const std::string& name) {
  auto id = d.find_signal(name);
  if (!id) throw std::runtime_error("no signal " + name);
  return *id;
}

/// Parameters of the property corpus: at most 8 stored bits and 32 cycles.
inline GeneratorParams corpus_params(std::uint64_t seed) {
  GeneratorParams p;
  p.max_regs = 4;
  p.max_stmts = 12;
  p.memory = seed % 3 == 0;
  p.max_reg_bits = 8;
  p.cycles = 8 + static_cast<unsigned>(seed % 25);
  return p;
}

inline PreparedDesign corpus_design(std::uint64_t seed) {
  GeneratedDesign g = generate_random_design(seed, corpus_params(seed));
  return prepare_from_text(g.mrtl, g.stimulus_csv, g.observation);
}

// ---- independent slice oracle ----
//
// Rebuilds dependences straight from the def/use table and the statement
// tree, then closes them with Floyd-Warshall style transitive closure.

inline std::vector<StatementId> brute_force_slice(const ElaboratedDesign& d, const std::vector<SignalId>& obs) {
  std::size_t n = d.statements.size();
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));  // reach[a][b]: a influences b
  auto sliceable = [&](StatementId s) { return d.statements[s].sliceable(); };
  for (StatementId a = 0; a < n; ++a) {
    if (!sliceable(a)) continue;
    for (StatementId b = 0; b < n; ++b) {
      if (!sliceable(b)) continue;
      for (SignalId x : d.defuse[a].def) {
        if (std::find(d.defuse[b].use.begin(), d.defuse[b].use.end(), x) != d.defuse[b].use.end()) reach[a][b] = 1;
      }
    }
    // a header controls every statement below it
    for (StatementId b = 0; b < n; ++b) {
      if (!sliceable(b) || b == a) continue;
      for (auto p = d.statements[b].parent; p; p = d.statements[*p].parent) {
        if (*p == a && d.statements[a].is_header()) reach[a][b] = 1;
      }
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = 1;

  std::set<StatementId> roots;
  for (StatementId s = 0; s < n; ++s) {
    if (!sliceable(s)) continue;
    for (SignalId x : d.defuse[s].def) {
      if (std::find(obs.begin(), obs.end(), x) != obs.end()) roots.insert(s);
    }
  }
  std::vector<StatementId> out;
  for (StatementId s = 0; s < n; ++s) {
    if (!sliceable(s)) continue;
    bool in = roots.count(s) != 0;
    for (StatementId r : roots) in = in || reach[s][r];
    if (in) out.push_back(s);
  }
  return out;
}

inline std::vector<FaultDescriptor> detected_set(const CampaignResult& r) {
  std::vector<FaultDescriptor> out;
  for (std::size_t i = 0; i < r.faults.size(); ++i) {
    if (r.outcomes[i].detected()) out.push_back(r.faults[i]);
  }
  return out;
}

}  // namespace testing
