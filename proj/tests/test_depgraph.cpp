#include <doctest.h>

#include "helpers.hpp"

using namespace slicefi;
using testing::sig;

namespace {

bool has_edge(const Pdg& g, StatementId from, StatementId to, EdgeKind kind) {
  return std::binary_search(g.edges.begin(), g.edges.end(), PdgEdge{from, to, kind});
}

std::vector<StatementId> slice_of(const PreparedDesign& p, std::vector<std::string> names) {
  auto obs = resolve_observation(p.design, names);
  return static_slice(p.pdg, p.design, obs).statements;
}

}  // namespace

// Ids are 0-based: S1..S6 of the toy are 0..5.
TEST_CASE("toy dependence edges") {
  auto p = testing::toy();
  const Pdg& g = p.pdg;
  CHECK(has_edge(g, 3, 5, EdgeKind::Data));
  CHECK(has_edge(g, 1, 3, EdgeKind::Data));
  CHECK(has_edge(g, 2, 3, EdgeKind::Data));
  CHECK(has_edge(g, 3, 3, EdgeKind::Data));
  CHECK(has_edge(g, 0, 1, EdgeKind::Control));
  CHECK(has_edge(g, 0, 2, EdgeKind::Control));
  CHECK(g.edges.size() == 6);
  CHECK(format_edge_list(g) == "0 control 1\n0 control 2\n1 data 3\n2 data 3\n3 data 3\n3 data 5\n");
}

TEST_CASE("toy static slices") {
  auto p = testing::toy();
  CHECK(slice_of(p, {"out"}) == std::vector<StatementId>{0, 1, 2, 3, 5});
  CHECK(slice_of(p, {"dead"}) == std::vector<StatementId>{4});
  auto obs = resolve_observation(p.design, {"out"});
  StaticSlice s = static_slice(p.pdg, p.design, obs);
  CHECK(s.registers == std::vector<SignalId>{sig(p.design, "r1"), sig(p.design, "r2")});
  CHECK(s.contains(0));
  CHECK_FALSE(s.contains(4));
}

TEST_CASE("single assign: one node, no edges") {
  ElaboratedDesign d = load_design("module m(clk, i, o); input clk; input i; output o; assign o = i; endmodule");
  Pdg g = build_pdg(d);
  CHECK(g.nodes.size() == 1);
  CHECK(g.edges.empty());
}

TEST_CASE("independent chains stay disconnected") {
  ElaboratedDesign d = load_design(
      "module m(clk, a, b, x, y); input clk; input a; input b; output x; output y; reg ra, rb;\n"
      "always @(posedge clk) ra <= a; always @(posedge clk) rb <= b;\n"
      "assign x = ra; assign y = rb;\nendmodule");
  Pdg g = build_pdg(d);
  CHECK(g.edges == std::vector<PdgEdge>{{0, 2, EdgeKind::Data}, {1, 3, EdgeKind::Data}});
  std::vector<SignalId> x{sig(d, "x")};
  CHECK(static_slice(g, d, x).statements == std::vector<StatementId>{0, 2});
}

TEST_CASE("slice criterion errors") {
  auto p = testing::toy();
  CHECK_THROWS_AS(static_slice(p.pdg, p.design, std::vector<SignalId>{}), Error);
  try {
    static_slice(p.pdg, p.design, std::vector<SignalId>{99});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownObservationSignal);
  }
  try {
    static_slice(p.pdg, p.design, std::vector<SignalId>{sig(p.design, "in_a")});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyCriterion);
  }
}

TEST_CASE("header statements are not blocks; blocks never enter the graph") {
  ElaboratedDesign d = load_design(
      "module m(clk, a, o); input clk; input a; output o; reg x;\n"
      "always @(posedge clk) begin if (a) begin x <= 1; end end\n"
      "assign o = x;\nendmodule");
  Pdg g = build_pdg(d);
  for (const auto& e : g.edges) {
    CHECK(d.statements[e.from].sliceable());
    CHECK(d.statements[e.to].sliceable());
  }
  CHECK(has_edge(g, 1, 3, EdgeKind::Control));
}

TEST_CASE("static slice equals brute-force closure on random designs") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto p = testing::corpus_design(seed);
    auto expected = testing::brute_force_slice(p.design, p.observation);
    CHECK(p.slice.statements == expected);
  }
}

TEST_CASE("slices are closed under control dependence") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto p = testing::corpus_design(seed);
    for (const auto& e : p.pdg.edges) {
      if (e.kind == EdgeKind::Control && p.slice.contains(e.to)) CHECK(p.slice.contains(e.from));
    }
  }
}

TEST_CASE("slice of a union is the union of slices") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto p = testing::corpus_design(seed);
    std::vector<SignalId> candidates;
    for (const auto& s : p.design.signals) {
      if (s.kind != SignalKind::Memory && !p.pdg.definers[s.id].empty()) candidates.push_back(s.id);
    }
    for (std::size_t i = 0; i + 1 < candidates.size(); ++i) {
      std::vector<SignalId> a{candidates[i]}, b{candidates[i + 1]}, ab{candidates[i], candidates[i + 1]};
      auto sa = static_slice(p.pdg, p.design, a).statements;
      auto sb = static_slice(p.pdg, p.design, b).statements;
      std::vector<StatementId> u;
      std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(u));
      CHECK(static_slice(p.pdg, p.design, ab).statements == u);
    }
  }
}

// Zeroing every statement outside the slice must leave the observed trace alone.
TEST_CASE("statements outside the slice cannot change the observation") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto p = testing::corpus_design(seed);
    ElaboratedDesign cut = p.design;
    for (auto& s : cut.statements) {
      if (!s.sliceable() || p.slice.contains(s.id)) continue;
      unsigned w = s.expr.width;
      s.expr = Expr::constant(0, w == 0 ? 1 : w);
    }
    GoldenRun a = simulate_golden(p.design, p.stimulus, p.observation);
    GoldenRun b = simulate_golden(cut, p.stimulus, p.observation);
    CHECK(a.golden == b.golden);
  }
}

TEST_CASE("edge list is deterministic") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto p = testing::corpus_design(seed);
    CHECK(format_edge_list(build_pdg(p.design)) == format_edge_list(p.pdg));
  }
}
