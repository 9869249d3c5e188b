#pragma once

// Input/output labeled transition systems.
//
// States keep declaration order everywhere: the multigraph construction
// reads "left to right" as increasing state index, so no transformation in
// this library reorders states.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ioconf/dfsa.hpp"
#include "ioconf/error.hpp"
#include "ioconf/token.hpp"

namespace ioconf {

enum class LabelKind : std::uint8_t { input, output, tau };

struct Label {
  LabelKind kind = LabelKind::tau;
  std::size_t index = 0;  // into Iolts::inputs or Iolts::outputs

  static Label input(std::size_t i) { return {LabelKind::input, i}; }
  static Label output(std::size_t i) { return {LabelKind::output, i}; }
  static Label tau() { return {LabelKind::tau, 0}; }

  auto operator<=>(const Label&) const = default;
};

struct Transition {
  std::size_t source = 0;
  Label label;
  std::size_t target = 0;

  auto operator<=>(const Transition&) const = default;
};

/// An IOLTS. After quiescence completion `outputs` ends with "delta".
struct Iolts {
  std::vector<std::string> states;
  std::size_t initial = 0;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<Transition> transitions;
  /// Free-form provenance, serialized as leading `#` lines.
  std::vector<std::string> comments;

  std::size_t size() const { return states.size(); }

  const std::string& label_name(Label l) const {
    static const std::string tau_name(kTau);
    switch (l.kind) {
      case LabelKind::input: return inputs[l.index];
      case LabelKind::output: return outputs[l.index];
      case LabelKind::tau: break;
    }
    return tau_name;
  }

  std::optional<std::size_t> state_index(std::string_view name) const {
    for (std::size_t i = 0; i < states.size(); ++i)
      if (states[i] == name) return i;
    return std::nullopt;
  }

  std::optional<Label> find_label(std::string_view name) const {
    if (name == kTau) return Label::tau();
    for (std::size_t i = 0; i < inputs.size(); ++i)
      if (inputs[i] == name) return Label::input(i);
    for (std::size_t i = 0; i < outputs.size(); ++i)
      if (outputs[i] == name) return Label::output(i);
    return std::nullopt;
  }

  std::optional<std::size_t> delta_index() const {
    for (std::size_t i = 0; i < outputs.size(); ++i)
      if (outputs[i] == kDelta) return i;
    return std::nullopt;
  }

  bool is_quiescence_completed() const { return delta_index().has_value(); }

  /// Inputs, then outputs (delta last once completed).
  std::vector<std::string> observable_alphabet() const {
    std::vector<std::string> a = inputs;
    a.insert(a.end(), outputs.begin(), outputs.end());
    return a;
  }

  /// Outputs without delta.
  std::vector<std::string> user_outputs() const {
    std::vector<std::string> u;
    for (const auto& o : outputs)
      if (o != kDelta) u.push_back(o);
    return u;
  }

  /// No tau and at most one transition per (source, label).
  bool is_deterministic() const {
    std::set<std::pair<std::size_t, Label>> seen;
    for (const auto& t : transitions) {
      if (t.label.kind == LabelKind::tau) return false;
      if (!seen.emplace(t.source, t.label).second) return false;
    }
    return true;
  }

  /// Every input has an outgoing transition at every state.
  bool is_input_enabled() const {
    std::set<std::pair<std::size_t, std::size_t>> enabled;
    for (const auto& t : transitions)
      if (t.label.kind == LabelKind::input)
        enabled.emplace(t.source, t.label.index);
    return enabled.size() == states.size() * inputs.size();
  }

  bool operator==(const Iolts&) const = default;
};

struct ParseOptions {
  /// Accept "delta" as a declared action and "pass"/"fail" as state names,
  /// as test purposes need.
  bool allow_reserved = false;
  /// Accept a quiescence-completed model: "delta" declared as an output
  /// whose transitions are exactly the self-loops at quiescent states.
  bool allow_delta = false;
};

/// True when delta transitions are exactly self-loops at the states with
/// no output and no tau transition (vacuously true without delta).
inline bool has_consistent_quiescence(const Iolts& m) {
  auto delta = m.delta_index();
  if (!delta) return true;
  std::vector<bool> active(m.size(), false), looped(m.size(), false);
  for (const auto& t : m.transitions) {
    if (t.label == Label::output(*delta)) {
      if (t.source != t.target || looped[t.source]) return false;
      looped[t.source] = true;
    } else if (t.label.kind != LabelKind::input) {
      active[t.source] = true;
    }
  }
  for (std::size_t s = 0; s < m.size(); ++s)
    if (active[s] == looped[s]) return false;
  return true;
}

namespace detail {

inline void check_name(std::string_view name, std::string_view what,
                       bool allow_reserved) {
  if (!is_valid_name(name))
    throw ParseError("invalid " + std::string(what) + " name '" +
                     std::string(name) + "'");
  if (name == kTau || (!allow_reserved && is_reserved_name(name)))
    throw ParseError("reserved name '" + std::string(name) + "' used as " +
                     std::string(what));
}

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace detail

/// Checks the structural invariants; throws ParseError on the first violation.
inline void validate(const Iolts& m, const ParseOptions& opts = {}) {
  if (m.states.empty()) throw ParseError("model has no states");
  std::set<std::string> seen;
  for (const auto& s : m.states) {
    detail::check_name(s, "state", opts.allow_reserved);
    if (!seen.insert(s).second) throw ParseError("duplicate state '" + s + "'");
  }
  std::set<std::string> in_set;
  for (const auto& a : m.inputs) {
    detail::check_name(a, "action", opts.allow_reserved);
    if (!in_set.insert(a).second)
      throw ParseError("duplicate action '" + a + "'");
  }
  std::set<std::string> out_set;
  for (const auto& a : m.outputs) {
    if (a != kDelta || !(opts.allow_reserved || opts.allow_delta))
      detail::check_name(a, "action", opts.allow_reserved);
    if (!out_set.insert(a).second)
      throw ParseError("duplicate action '" + a + "'");
    if (in_set.count(a)) throw ParseError("alphabets not disjoint: '" + a + "'");
  }
  if (m.initial >= m.states.size()) throw ParseError("initial state out of range");
  for (const auto& t : m.transitions) {
    if (t.source >= m.states.size() || t.target >= m.states.size())
      throw ParseError("transition endpoint out of range");
    if (t.label.kind == LabelKind::input && t.label.index >= m.inputs.size())
      throw ParseError("unknown label index");
    if (t.label.kind == LabelKind::output && t.label.index >= m.outputs.size())
      throw ParseError("unknown label index");
  }
}

/// Parses the line-oriented model format:
///
///     states: s0 s1
///     initial: s0
///     inputs: a
///     outputs: x
///     transitions:
///     s0 a s1
///     s1 x s0
///
/// `#` starts a comment. Sections appear once each, in this order.
inline Iolts parse_model(std::string_view text, const ParseOptions& opts = {}) {
  static constexpr std::string_view kSections[] = {"states", "initial", "inputs",
                                                   "outputs", "transitions"};
  Iolts m;
  std::size_t section = 0;  // number of sections seen so far
  std::string initial_name;
  std::istringstream in{std::string(text)};
  std::size_t lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    auto hash = raw.find('#');
    if (section == 0 && hash != std::string::npos &&
        raw.find_first_not_of(" \t") == hash) {
      auto body = raw.substr(hash + 1);
      if (!body.empty() && body[0] == ' ') body.erase(0, 1);
      m.comments.push_back(std::move(body));
      continue;
    }
    std::string_view line(raw);
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto words = detail::split_ws(line);
    if (words.empty()) continue;
    auto where = [&] { return "line " + std::to_string(lineno) + ": "; };

    const auto colon = words[0].find(':');
    if (colon != std::string::npos && colon + 1 == words[0].size()) {
      auto key = words[0].substr(0, colon);
      if (section >= std::size(kSections) || key != kSections[section]) {
        const auto rest = std::begin(kSections) + std::min(section, std::size(kSections));
        const bool later = std::find(rest, std::end(kSections), key) != std::end(kSections);
        if (later)
          throw ParseError(where() + "missing section '" + std::string(kSections[section]) + "'");
        throw ParseError(where() + "unexpected section '" + key + "'");
      }
      std::vector<std::string> names(words.begin() + 1, words.end());
      switch (section) {
        case 0: m.states = std::move(names); break;
        case 1:
          if (names.size() != 1)
            throw ParseError(where() + "initial expects exactly one state");
          initial_name = names[0];
          break;
        case 2: m.inputs = std::move(names); break;
        case 3: m.outputs = std::move(names); break;
        case 4:
          if (!names.empty())
            throw ParseError(where() + "transitions header takes no arguments");
          break;
      }
      if (section == 3) validate(m, opts);  // catches alphabet errors early
      ++section;
      continue;
    }
    if (section != std::size(kSections))
      throw ParseError(where() + "missing section '" +
                       std::string(kSections[section]) + "'");
    if (words.size() != 3)
      throw ParseError(where() + "transition expects '<src> <label> <dst>'");
    auto src = m.state_index(words[0]);
    auto dst = m.state_index(words[2]);
    if (!src) throw ParseError(where() + "unknown state '" + words[0] + "'");
    if (!dst) throw ParseError(where() + "unknown state '" + words[2] + "'");
    if (words[1] == kDelta && !opts.allow_reserved && !opts.allow_delta)
      throw ParseError(where() + "reserved name 'delta' used as label");
    auto label = m.find_label(words[1]);
    if (!label) throw ParseError(where() + "unknown label '" + words[1] + "'");
    m.transitions.push_back({*src, *label, *dst});
  }
  if (section != std::size(kSections))
    throw ParseError("missing section '" + std::string(kSections[section]) + "'");
  auto init = m.state_index(initial_name);
  if (!init) throw ParseError("unknown state '" + initial_name + "' in initial");
  m.initial = *init;
  validate(m, opts);
  if (opts.allow_delta && !opts.allow_reserved && !has_consistent_quiescence(m))
    throw ParseError("delta transitions must be self-loops at exactly the quiescent states");
  return m;
}

/// Canonical text: comments, then the five sections, transitions in order.
inline std::string serialize_model(const Iolts& m) {
  std::string out;
  for (const auto& c : m.comments) out += "# " + c + "\n";
  auto line = [&](std::string_view key, std::span<const std::string> names) {
    out += key;
    out += ':';
    for (const auto& n : names) out += " " + n;
    out += '\n';
  };
  line("states", m.states);
  out += "initial: " + m.states[m.initial] + "\n";
  line("inputs", m.inputs);
  line("outputs", m.outputs);
  out += "transitions:\n";
  for (const auto& t : m.transitions)
    out += m.states[t.source] + " " + m.label_name(t.label) + " " +
           m.states[t.target] + "\n";
  return out;
}

/// Adds a delta self-loop at every state with no output and no tau
/// transition, and appends "delta" to the outputs.
inline Iolts complete_quiescence(const Iolts& m) {
  if (m.is_quiescence_completed() ||
      std::find(m.inputs.begin(), m.inputs.end(), kDelta) != m.inputs.end())
    throw InvalidArgument("model already contains delta");
  Iolts out = m;
  std::vector<bool> active(m.size(), false);
  for (const auto& t : m.transitions)
    if (t.label.kind != LabelKind::input) active[t.source] = true;
  out.outputs.emplace_back(kDelta);
  const auto delta = Label::output(out.outputs.size() - 1);
  for (std::size_t s = 0; s < m.size(); ++s)
    if (!active[s]) out.transitions.push_back({s, delta, s});
  return out;
}

/// Returns `m` completed for quiescence unless it already is.
inline Iolts ensure_quiescence(const Iolts& m) {
  return m.is_quiescence_completed() ? m : complete_quiescence(m);
}

/// Reflexive-transitive tau closure of a state set (sorted, unique).
inline std::vector<std::size_t> tau_closure(const Iolts& m,
                                            std::vector<std::size_t> seeds) {
  std::vector<std::vector<std::size_t>> tau_succ(m.size());
  for (const auto& t : m.transitions)
    if (t.label.kind == LabelKind::tau) tau_succ[t.source].push_back(t.target);
  std::vector<bool> in(m.size(), false);
  std::vector<std::size_t> stack;
  for (auto s : seeds)
    if (!in[s]) {
      in[s] = true;
      stack.push_back(s);
    }
  while (!stack.empty()) {
    auto s = stack.back();
    stack.pop_back();
    for (auto n : tau_succ[s])
      if (!in[n]) {
        in[n] = true;
        stack.push_back(n);
      }
  }
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < m.size(); ++s)
    if (in[s]) out.push_back(s);
  return out;
}

/// Subset construction over the observable tokens, in the given order.
/// `alphabet` must hold exactly the model's observable tokens. All states
/// accept; the empty subset is never created, so the result is partial.
inline Dfsa determinize(const Iolts& m, std::vector<std::string> alphabet) {
  const auto own = m.observable_alphabet();
  if (!same_token_set(own, alphabet))
    throw AlphabetError("alphabet mismatch: {" + join(own) + "} vs {" +
                        join(alphabet) + "}");
  const std::size_t k = alphabet.size();
  std::vector<std::size_t> token_of_input(m.inputs.size()),
      token_of_output(m.outputs.size());
  for (std::size_t t = 0; t < k; ++t) {
    auto l = *m.find_label(alphabet[t]);
    (l.kind == LabelKind::input ? token_of_input : token_of_output)[l.index] = t;
  }
  // succ[state][token] -> targets
  std::vector<std::vector<std::vector<std::size_t>>> succ(
      m.size(), std::vector<std::vector<std::size_t>>(k));
  for (const auto& t : m.transitions) {
    if (t.label.kind == LabelKind::tau) continue;
    auto tok = t.label.kind == LabelKind::input ? token_of_input[t.label.index]
                                                : token_of_output[t.label.index];
    succ[t.source][tok].push_back(t.target);
  }

  Dfsa out(std::move(alphabet));
  std::map<std::vector<std::size_t>, std::size_t> ids;
  std::vector<std::vector<std::size_t>> subsets;
  auto intern = [&](std::vector<std::size_t> set) {
    auto [it, fresh] = ids.try_emplace(set, subsets.size());
    if (fresh) {
      out.add_state(true);
      subsets.push_back(std::move(set));
    }
    return it->second;
  };
  out.set_initial(intern(tau_closure(m, {m.initial})));
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    for (std::size_t tok = 0; tok < k; ++tok) {
      std::vector<std::size_t> step;
      for (auto s : subsets[i])
        step.insert(step.end(), succ[s][tok].begin(), succ[s][tok].end());
      if (step.empty()) continue;
      out.set_next(i, tok, intern(tau_closure(m, std::move(step))));
    }
  }
  return out;
}

inline Dfsa determinize(const Iolts& m) {
  return determinize(m, m.observable_alphabet());
}

/// All observable words of length <= depth, by exhaustive search over
/// (state, word) configurations. Independent of determinize().
inline std::set<Word> traces_bounded(const Iolts& m, std::size_t depth) {
  std::set<Word> words;
  std::set<std::pair<std::size_t, Word>> visited;
  std::vector<std::pair<std::size_t, Word>> stack{{m.initial, Word{}}};
  while (!stack.empty()) {
    auto [s, w] = std::move(stack.back());
    stack.pop_back();
    if (!visited.emplace(s, w).second) continue;
    words.insert(w);
    for (const auto& t : m.transitions) {
      if (t.source != s) continue;
      if (t.label.kind == LabelKind::tau) {
        stack.emplace_back(t.target, w);
      } else if (w.size() < depth) {
        Word next = w;
        next.push_back(m.label_name(t.label));
        stack.emplace_back(t.target, std::move(next));
      }
    }
  }
  return words;
}

}  // namespace ioconf
