#include <gtest/gtest.h>

#include "ioconf/testgen.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace ioconf;
using namespace ioconf::test;

namespace {

std::vector<std::pair<std::size_t, std::size_t>> coords(const Multigraph& g,
                                                        const std::vector<std::size_t>& path) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (auto v : path)
    out.emplace_back(v == g.fail() ? SIZE_MAX : g.state_of(v),
                     v == g.fail() ? SIZE_MAX : g.level_of(v));
  return out;
}

Word dw(std::initializer_list<const char*> tokens) { return w(tokens); }

}  // namespace

TEST(Multigraph, LevelsAndNodes) {
  const auto g = build_multigraph(m1(), 2);
  EXPECT_EQ(g.levels, 5u);
  EXPECT_EQ(g.node_count(), 11u);
  EXPECT_EQ(build_multigraph(four_state(), 4).levels, 17u);
  EXPECT_EQ(build_multigraph(four_state(), 4).node_count(), 69u);
}

TEST(Multigraph, RejectsBadInput) {
  EXPECT_THROW(build_multigraph(m1(), 0), InvalidArgument);
  const auto nondet = parse_model("states: s0 s1\ninitial: s0\ninputs: a\noutputs: x\n"
                                  "transitions:\ns0 a s0\ns0 a s1\n");
  EXPECT_THROW(build_multigraph(nondet, 2), InvalidArgument);
}

TEST(Multigraph, AabbxNodePath) {
  const auto g = build_multigraph(four_state(), 4);
  const auto path = replay(g, dw({"a", "a", "b", "b", "x"}));
  using P = std::pair<std::size_t, std::size_t>;
  EXPECT_EQ(coords(g, path), (std::vector<P>{{0, 0}, {1, 0}, {3, 0}, {0, 1}, {3, 1},
                                             {SIZE_MAX, SIZE_MAX}}));
}

TEST(Multigraph, StructuralInvariants) {
  for (const auto& spec : {m1(), four_state()}) {
    const auto sc = complete_quiescence(spec);
    for (std::size_t m = 1; m <= 3; ++m) {
      const auto g = build_multigraph(spec, m);
      EXPECT_TRUE(is_acyclic(g));
      for (std::size_t v = 0; v < g.fail(); ++v) {
        for (std::size_t u = g.input_count; u < g.alphabet.size(); ++u) {
          const bool defined = std::any_of(sc.transitions.begin(), sc.transitions.end(),
                                           [&](const Transition& t) {
                                             return t.source == g.state_of(v) &&
                                                    sc.label_name(t.label) == g.alphabet[u];
                                           });
          const bool to_fail = std::any_of(g.edges[v].begin(), g.edges[v].end(),
                                           [&](const auto& e) {
                                             return e.token == u && e.target == g.fail();
                                           });
          EXPECT_EQ(to_fail, !defined);
        }
      }
    }
  }
}

TEST(FaultPaths, ShortestFaultOfM1) {
  const auto g = build_multigraph(m1(), 2);
  EXPECT_EQ(enumerate_fault_paths(g, 1), std::vector<Word>{dw({"x"})});
}

TEST(FaultPaths, EveryPathEndsAtFailAndIsAFault) {
  for (const auto& spec : {m1(), four_state()}) {
    const auto sc = complete_quiescence(spec);
    const auto g = build_multigraph(spec, 2);
    const auto paths = enumerate_fault_paths(g, 500);
    ASSERT_FALSE(paths.empty());
    for (const auto& p : paths) {
      EXPECT_EQ(replay(g, p).back(), g.fail());
      EXPECT_EQ(replay(g, p).size(), p.size() + 1);
      EXPECT_TRUE(oracle::in_otr(sc, Word(p.begin(), p.end() - 1)));
      EXPECT_FALSE(oracle::in_otr(sc, p));
    }
    for (std::size_t i = 1; i < paths.size(); ++i)
      EXPECT_LE(paths[i - 1].size(), paths[i].size());
  }
}

TEST(FaultPaths, CountMatchesEnumeration) {
  for (const auto& [spec, max_m] : {std::pair{m1(), 3u}, std::pair{four_state(), 1u}}) {
    for (std::size_t m = 1; m <= max_m; ++m) {
      const auto g = build_multigraph(spec, m);
      const auto total = count_fault_paths(g);
      ASSERT_LT(total, 200000u);
      const auto paths = enumerate_fault_paths(g, total + 10);
      EXPECT_EQ(paths.size(), total);
      EXPECT_EQ(std::set<Word>(paths.begin(), paths.end()).size(), total);
    }
  }
}

TEST(FaultPaths, FourStateExampleSequences) {
  const auto g = build_multigraph(four_state(), 4);
  const auto paths = enumerate_fault_paths(g, 1000);
  const std::set<Word> have(paths.begin(), paths.end());
  const std::vector<Word> listed{
      dw({"a", "a", "b", "b", "x"}), dw({"a", "a", "a", "x"}), dw({"x"}),
      dw({"a", "delta"}),           dw({"b", "x"}),           dw({"delta", "x"}),
      dw({"a", "a", "x"}),          dw({"b", "b", "x"}),      dw({"a", "x", "delta"}),
      dw({"a", "b", "delta"}),      dw({"delta", "b", "x"}),  dw({"b", "delta", "x"}),
      dw({"a", "a", "b", "x"}),     dw({"b", "b", "b", "x"}), dw({"a", "a", "delta", "x"})};
  for (const auto& p : listed) EXPECT_TRUE(have.count(p)) << format_word(p);
}

TEST(TestPurpose, SingleOutputPath) {
  const auto tp = path_to_test_purpose(dw({"x"}), {"a"}, {"x", "delta"});
  const auto& m = tp.model;
  EXPECT_EQ(m.states, (std::vector<std::string>{"t0", "pass", "fail"}));
  EXPECT_EQ(m.inputs, (std::vector<std::string>{"x", "delta"}));
  EXPECT_EQ(m.outputs, (std::vector<std::string>{"a"}));
  auto target = [&](std::size_t s, std::string_view label) -> std::string {
    for (const auto& t : m.transitions)
      if (t.source == s && m.label_name(t.label) == label) return m.states[t.target];
    return "-";
  };
  EXPECT_EQ(target(0, "x"), "fail");
  EXPECT_EQ(target(0, "delta"), "pass");
  EXPECT_EQ(target(0, "a"), "pass");
  for (std::size_t terminal : {tp.pass, tp.fail}) {
    EXPECT_EQ(target(terminal, "x"), m.states[terminal]);
    EXPECT_EQ(target(terminal, "delta"), m.states[terminal]);
    EXPECT_EQ(target(terminal, "a"), "-");
  }
  EXPECT_TRUE(verify_tp_invariants(tp).ok());
}

TEST(TestPurpose, AabbxChain) {
  const auto tp = path_to_test_purpose(dw({"a", "a", "b", "b", "x"}), {"a", "b"}, {"x", "delta"});
  const auto& m = tp.model;
  EXPECT_EQ(tp.pass, 5u);
  EXPECT_EQ(tp.fail, 6u);
  for (std::size_t i = 0; i < 5; ++i) {
    std::vector<std::string> stimuli;
    for (const auto& t : m.transitions)
      if (t.source == i && t.label.kind == LabelKind::output) stimuli.push_back(m.label_name(t.label));
    EXPECT_EQ(stimuli.size(), 1u);
    // Chain stimuli a a b b, then the first IUT input at the last state.
    EXPECT_EQ(stimuli[0], i == 2 || i == 3 ? "b" : "a");
    for (const auto& t : m.transitions) {
      if (t.source == i && t.label.kind == LabelKind::input) {
        EXPECT_EQ(t.target, i == 4 && m.label_name(t.label) == "x" ? tp.fail : tp.pass);
      }
    }
  }
  EXPECT_TRUE(verify_tp_invariants(tp).ok());
}

TEST(TestPurpose, RejectsMalformedPaths) {
  EXPECT_THROW(path_to_test_purpose({}, {"a"}, {"x", "delta"}), InvalidArgument);
  EXPECT_THROW(path_to_test_purpose(dw({"x", "a"}), {"a"}, {"x", "delta"}), InvalidArgument);
  EXPECT_THROW(path_to_test_purpose(dw({"q"}), {"a"}, {"x", "delta"}), InvalidArgument);
}

TEST(TestPurpose, InvariantCheckerDetectsViolations) {
  auto tp = path_to_test_purpose(dw({"a", "x"}), {"a"}, {"x", "delta"});
  auto broken = tp;
  broken.model.transitions.push_back({tp.fail, Label::input(0), tp.pass});
  EXPECT_FALSE(verify_tp_invariants(broken).ok());
  broken = tp;
  broken.model.transitions.push_back({1, Label::input(0), 0});
  EXPECT_FALSE(verify_tp_invariants(broken).deterministic);
  broken = tp;
  broken.model.transitions.push_back({1, Label::output(0), 0});
  EXPECT_FALSE(verify_tp_invariants(broken).output_deterministic);
}

TEST(FaultModel, ExhaustiveForM1) {
  const auto fm = generate_fault_model(m1(), 1, 100000);
  EXPECT_FALSE(fm.truncated);
  EXPECT_EQ(fm.tps.size(), fm.total_paths);
  EXPECT_EQ(fm.levels, 3u);
  EXPECT_EQ(fm.outputs, (std::vector<std::string>{"x", "delta"}));
  const auto sc = complete_quiescence(m1());
  for (const auto& tp : fm.tps) {
    EXPECT_TRUE(verify_tp_invariants(tp).ok());
    bool final_edge = false;
    for (const auto& t : tp.model.transitions)
      if (t.target == tp.fail && t.source != tp.fail) {
        final_edge = true;
        EXPECT_EQ(tp.model.label_name(t.label), tp.path.back());
        EXPECT_EQ(t.label.kind, LabelKind::input);
      }
    EXPECT_TRUE(final_edge);
    EXPECT_FALSE(oracle::in_otr(sc, tp.path));
  }
}

TEST(FaultModel, DefaultLimitAndTruncation) {
  EXPECT_EQ(kDefaultTpLimit, 1000u);
  const auto fm = generate_fault_model(four_state(), 4, 5);
  EXPECT_EQ(fm.tps.size(), 5u);
  EXPECT_TRUE(fm.truncated);
  EXPECT_GT(fm.total_paths, 5u);
  EXPECT_EQ(fm.levels, 17u);
}
