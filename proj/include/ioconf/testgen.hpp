#pragma once

// Test-purpose generation from a leveled acyclic unfolding of a
// specification.
//
// For a deterministic specification with n states and an IUT bound m the
// multigraph has m·n+1 levels of n nodes each plus one fail node. A
// transition s_i -l-> s_j stays on its level when j > i and drops one level
// otherwise (the edge disappears on the last level). Every output left
// undefined at a state, delta included, leads to fail.

#include <cstdint>
#include <deque>
#include <limits>
#include <string>
#include <vector>

#include "ioconf/error.hpp"
#include "ioconf/iolts.hpp"

namespace ioconf {

struct Multigraph {
  struct Edge {
    std::size_t token;  // index into alphabet
    std::size_t target;
  };

  std::size_t m = 0;  // IUT state bound
  std::size_t n = 0;  // spec states
  std::size_t levels = 0;
  std::size_t initial_state = 0;  // spec initial state index
  std::vector<std::string> alphabet;  // inputs, then outputs (delta last)
  std::size_t input_count = 0;
  /// Node (state i, level k) has id k*n + i; the fail node is last.
  std::vector<std::vector<Edge>> edges;

  std::size_t node(std::size_t state, std::size_t level) const {
    return level * n + state;
  }
  std::size_t fail() const { return levels * n; }
  std::size_t root() const { return node(initial_state, 0); }
  std::size_t node_count() const { return levels * n + 1; }
  std::size_t state_of(std::size_t id) const { return id % n; }
  std::size_t level_of(std::size_t id) const { return id / n; }
  bool is_output(std::size_t token) const { return token >= input_count; }
};

/// Builds the multigraph. The specification must be deterministic; it is completed
/// for quiescence first when needed.
inline Multigraph build_multigraph(const Iolts& spec_in, std::size_t m) {
  if (m < 1) throw InvalidArgument("multigraph bound m must be >= 1");
  const Iolts spec = ensure_quiescence(spec_in);
  if (!spec.is_deterministic())
    throw InvalidArgument("multigraph construction requires a deterministic spec");
  Multigraph g;
  g.m = m;
  g.n = spec.size();
  g.levels = m * g.n + 1;
  g.initial_state = spec.initial;
  g.alphabet = spec.observable_alphabet();
  g.input_count = spec.inputs.size();
  const std::size_t k = g.alphabet.size();

  auto token_of = [&](Label l) {
    return l.kind == LabelKind::input ? l.index : g.input_count + l.index;
  };
  std::vector<std::vector<std::int64_t>> step(
      g.n, std::vector<std::int64_t>(k, -1));
  for (const auto& t : spec.transitions)
    step[t.source][token_of(t.label)] = static_cast<std::int64_t>(t.target);

  g.edges.assign(g.node_count(), {});
  for (std::size_t level = 0; level < g.levels; ++level) {
    for (std::size_t i = 0; i < g.n; ++i) {
      auto& out = g.edges[g.node(i, level)];
      for (std::size_t tok = 0; tok < k; ++tok) {
        const auto j = step[i][tok];
        if (j < 0) {
          if (g.is_output(tok)) out.push_back({tok, g.fail()});
          continue;
        }
        const auto target = static_cast<std::size_t>(j);
        if (target > i)
          out.push_back({tok, g.node(target, level)});
        else if (level + 1 < g.levels)
          out.push_back({tok, g.node(target, level + 1)});
      }
    }
  }
  return g;
}

/// Structural acyclicity: every edge increases (level, state) or hits fail.
inline bool is_acyclic(const Multigraph& g) {
  for (std::size_t v = 0; v + 1 < g.node_count(); ++v)
    for (const auto& e : g.edges[v])
      if (e.target != g.fail() && e.target <= v) return false;
  return g.edges[g.fail()].empty();
}

/// Number of root-to-fail paths, saturating at the maximum of uint64.
inline std::uint64_t count_fault_paths(const Multigraph& g) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> paths(g.node_count(), 0);
  paths[g.fail()] = 1;
  // Node ids are a topological order, so sweep them backwards.
  for (std::size_t v = g.fail(); v-- > 0;) {
    std::uint64_t total = 0;
    for (const auto& e : g.edges[v]) {
      auto add = paths[e.target];
      total = total > kMax - add ? kMax : total + add;
    }
    paths[v] = total;
  }
  return paths[g.root()];
}

/// Label sequences of root-to-fail paths, shortest first; equal lengths
/// follow token order along the path. Stops after `limit` paths.
inline std::vector<Word> enumerate_fault_paths(const Multigraph& g,
                                               std::size_t limit) {
  if (limit < 1) throw InvalidArgument("path limit must be >= 1");
  struct Entry {
    std::size_t node;
    std::int64_t parent;
    std::size_t token;
  };
  std::vector<Entry> arena{{g.root(), -1, 0}};
  std::vector<Word> out;
  auto word_of = [&](std::int64_t at, std::size_t last) {
    Word w{g.alphabet[last]};
    for (; arena[at].parent >= 0; at = arena[at].parent)
      w.push_back(g.alphabet[arena[at].token]);
    std::reverse(w.begin(), w.end());
    return w;
  };
  for (std::size_t head = 0; head < arena.size(); ++head) {
    const auto node = arena[head].node;
    for (const auto& e : g.edges[node]) {
      if (e.target == g.fail()) {
        out.push_back(word_of(static_cast<std::int64_t>(head), e.token));
        if (out.size() == limit) return out;
      } else {
        arena.push_back({e.target, static_cast<std::int64_t>(head), e.token});
      }
    }
  }
  return out;
}

/// Node sequence induced by a word, ending at fail or wherever it stops.
inline std::vector<std::size_t> replay(const Multigraph& g, const Word& w) {
  std::vector<std::size_t> path{g.root()};
  for (const auto& name : w) {
    auto v = path.back();
    if (v == g.fail()) break;
    bool moved = false;
    for (const auto& e : g.edges[v])
      if (g.alphabet[e.token] == name) {
        path.push_back(e.target);
        moved = true;
        break;
      }
    if (!moved) break;
  }
  return path;
}

/// A tester IOLTS over swapped alphabets: its inputs are the IUT outputs
/// (delta included) and its outputs the IUT inputs.
struct TestPurpose {
  Iolts model;
  Word path;
  std::size_t pass = 0;
  std::size_t fail = 0;
};

/// Chains `path` to fail, then routes every missing IUT output to pass,
/// gives each chain state without a stimulus the first IUT input towards
/// pass, and closes pass/fail with self-loops on every IUT output.
inline TestPurpose path_to_test_purpose(const Word& path,
                                        const std::vector<std::string>& iut_inputs,
                                        const std::vector<std::string>& iut_outputs) {
  if (path.empty()) throw InvalidArgument("test purpose path is empty");
  if (iut_inputs.empty()) throw InvalidArgument("test purpose needs an input action");
  TestPurpose tp;
  auto& m = tp.model;
  m.inputs = iut_outputs;
  m.outputs = iut_inputs;
  const std::size_t len = path.size();
  for (std::size_t i = 0; i < len; ++i) m.states.push_back("t" + std::to_string(i));
  m.states.emplace_back(kPass);
  m.states.emplace_back(kFail);
  tp.pass = len;
  tp.fail = len + 1;
  m.initial = 0;

  for (std::size_t i = 0; i < len; ++i) {
    auto label = m.find_label(path[i]);
    if (!label || label->kind == LabelKind::tau)
      throw InvalidArgument("malformed path: unknown action '" + path[i] + "'");
    if (i + 1 == len && label->kind != LabelKind::input)
      throw InvalidArgument("malformed path: must end with an output");
    m.transitions.push_back({i, *label, i + 1 == len ? tp.fail : i + 1});
  }
  for (std::size_t i = 0; i < len; ++i) {
    const auto chain = m.transitions[i].label;
    for (std::size_t u = 0; u < m.inputs.size(); ++u)
      if (!(chain == Label::input(u)))
        m.transitions.push_back({i, Label::input(u), tp.pass});
    if (chain.kind != LabelKind::output)
      m.transitions.push_back({i, Label::output(0), tp.pass});
  }
  for (auto terminal : {tp.pass, tp.fail})
    for (std::size_t u = 0; u < m.inputs.size(); ++u)
      m.transitions.push_back({terminal, Label::input(u), terminal});
  tp.path = path;
  return tp;
}

/// Structural properties every generated test purpose must have.
struct TpCheck {
  bool deterministic = false;
  bool input_enabled = false;
  bool output_deterministic = false;
  bool acyclic = false;  // apart from self-loops on pass and fail
  bool verdicts_separated = false;  // no path fail => pass or pass => fail

  bool ok() const {
    return deterministic && input_enabled && output_deterministic && acyclic &&
           verdicts_separated;
  }
};

inline TpCheck verify_tp_invariants(const TestPurpose& tp) {
  const auto& m = tp.model;
  TpCheck c;
  c.deterministic = m.is_deterministic();
  c.input_enabled = m.is_input_enabled();

  std::vector<std::size_t> outs(m.size(), 0);
  std::vector<std::vector<std::size_t>> succ(m.size());
  bool terminal_leak = false;
  for (const auto& t : m.transitions) {
    if (t.label.kind == LabelKind::output) ++outs[t.source];
    const bool terminal = t.source == tp.pass || t.source == tp.fail;
    if (terminal && t.target != t.source) terminal_leak = true;
    if (!terminal || t.target != t.source) succ[t.source].push_back(t.target);
  }
  c.output_deterministic = true;
  for (std::size_t s = 0; s < m.size(); ++s)
    if (s != tp.pass && s != tp.fail && outs[s] != 1) c.output_deterministic = false;

  // Kahn's algorithm on the graph without terminal self-loops.
  std::vector<std::size_t> indeg(m.size(), 0);
  for (const auto& v : succ)
    for (auto t : v) ++indeg[t];
  std::deque<std::size_t> ready;
  for (std::size_t s = 0; s < m.size(); ++s)
    if (!indeg[s]) ready.push_back(s);
  std::size_t sorted = 0;
  while (!ready.empty()) {
    auto s = ready.front();
    ready.pop_front();
    ++sorted;
    for (auto t : succ[s])
      if (--indeg[t] == 0) ready.push_back(t);
  }
  c.acyclic = sorted == m.size() && !terminal_leak;

  auto reaches = [&](std::size_t from, std::size_t to) {
    std::vector<bool> seen(m.size(), false);
    std::vector<std::size_t> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
      auto s = stack.back();
      stack.pop_back();
      if (s == to) return true;
      for (auto t : succ[s])
        if (!seen[t]) {
          seen[t] = true;
          stack.push_back(t);
        }
    }
    return false;
  };
  c.verdicts_separated = !reaches(tp.fail, tp.pass) && !reaches(tp.pass, tp.fail);
  return c;
}

struct FaultModel {
  std::vector<TestPurpose> tps;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t levels = 0;
  std::size_t limit = 0;
  std::uint64_t total_paths = 0;  // saturating
  bool truncated = false;         // limit < total_paths: completeness not claimed
  std::vector<std::string> inputs;   // IUT inputs
  std::vector<std::string> outputs;  // IUT outputs, delta included
};

inline constexpr std::size_t kDefaultTpLimit = 1000;

inline FaultModel generate_fault_model(const Iolts& spec_in, std::size_t m,
                                       std::size_t limit = kDefaultTpLimit) {
  if (limit < 1) throw InvalidArgument("path limit must be >= 1");
  const Iolts spec = ensure_quiescence(spec_in);
  const auto g = build_multigraph(spec, m);
  FaultModel fm;
  fm.m = m;
  fm.n = g.n;
  fm.levels = g.levels;
  fm.limit = limit;
  fm.total_paths = count_fault_paths(g);
  fm.truncated = fm.total_paths > limit;
  fm.inputs = spec.inputs;
  fm.outputs = spec.outputs;
  for (const auto& path : enumerate_fault_paths(g, limit))
    fm.tps.push_back(path_to_test_purpose(path, fm.inputs, fm.outputs));
  return fm;
}

}  // namespace ioconf
