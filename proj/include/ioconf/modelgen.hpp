#pragma once

// Random models, submachines, mutants and angelic input completion.
//
// All randomness comes from a SplitMix64 stream with explicit bounded and
// unit draws (no std distributions), so a seed reproduces the same model
// on every platform.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ioconf/conformance.hpp"
#include "ioconf/error.hpp"
#include "ioconf/iolts.hpp"

namespace ioconf {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n) by rejection of the biased low range.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      auto r = next();
      if (r >= threshold) return r % n;
    }
  }

  /// Uniform in [0, 1) with 53 bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return unit() < p; }

 private:
  std::uint64_t state_;
};

inline std::vector<std::string> numbered_names(std::string_view prefix,
                                               std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(std::string(prefix) + std::to_string(i));
  return out;
}

struct GenParams {
  std::size_t states = 1;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  bool deterministic = true;
  bool input_enabled = true;
  /// Probability of each optional (state, label) transition.
  double density = 0.5;
  /// Per-state probability of a tau transition; nondeterministic models only.
  double tau_probability = 0.0;
  std::uint64_t seed = 0;
};

namespace detail {

inline std::string fmt_real(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

inline std::vector<Label> all_labels(const Iolts& m) {
  std::vector<Label> out;
  for (std::size_t i = 0; i < m.inputs.size(); ++i) out.push_back(Label::input(i));
  for (std::size_t i = 0; i < m.outputs.size(); ++i)
    if (m.outputs[i] != kDelta) out.push_back(Label::output(i));
  return out;
}

inline std::vector<bool> reachable_states(const Iolts& m) {
  std::vector<bool> seen(m.size(), false);
  std::vector<std::size_t> stack{m.initial};
  seen[m.initial] = true;
  while (!stack.empty()) {
    auto s = stack.back();
    stack.pop_back();
    for (const auto& t : m.transitions)
      if (t.source == s && !seen[t.target]) {
        seen[t.target] = true;
        stack.push_back(t.target);
      }
  }
  return seen;
}

// Drops unreachable states, keeping declaration order of the rest.
inline Iolts prune_unreachable(const Iolts& m) {
  const auto keep = reachable_states(m);
  std::vector<std::size_t> remap(m.size(), 0);
  Iolts out = m;
  out.states.clear();
  for (std::size_t s = 0; s < m.size(); ++s)
    if (keep[s]) {
      remap[s] = out.states.size();
      out.states.push_back(m.states[s]);
    }
  out.initial = remap[m.initial];
  out.transitions.clear();
  for (const auto& t : m.transitions)
    if (keep[t.source] && keep[t.target])
      out.transitions.push_back({remap[t.source], t.label, remap[t.target]});
  return out;
}

}  // namespace detail

/// A random model, connected from its initial state s0, honoring the
/// deterministic and input-enabled flags.
inline Iolts random_iolts(const GenParams& p) {
  if (p.states < 1) throw InvalidArgument("state count must be >= 1");
  if (!(p.density >= 0 && p.density <= 1))
    throw InvalidArgument("density must lie in [0, 1]");
  if (!(p.tau_probability >= 0 && p.tau_probability <= 1))
    throw InvalidArgument("tau probability must lie in [0, 1]");
  if (p.deterministic && p.tau_probability > 0)
    throw InvalidArgument("deterministic models cannot have tau transitions");
  if (p.input_enabled && p.density == 0)
    throw InvalidArgument("infeasible parameters: density 0 with input-enabled models");
  if (p.states > 1 && p.inputs.empty() && p.outputs.empty())
    throw InvalidArgument("infeasible parameters: no actions to connect states");

  Iolts m;
  m.states = numbered_names("s", p.states);
  m.inputs = p.inputs;
  m.outputs = p.outputs;
  validate(m);
  SplitMix64 rng(p.seed);
  const auto labels = detail::all_labels(m);
  std::set<std::pair<std::size_t, Label>> used;
  std::set<Transition> present;
  auto add = [&](std::size_t s, Label l, std::size_t t) {
    if (!present.insert({s, l, t}).second) return;
    m.transitions.push_back({s, l, t});
    used.emplace(s, l);
  };
  auto free_labels = [&](std::size_t s) {
    std::vector<Label> out;
    for (auto l : labels)
      if (!p.deterministic || !used.count({s, l})) out.push_back(l);
    return out;
  };

  // Spanning tree from s0: each new state hangs off an earlier one.
  for (std::size_t i = 1; i < p.states; ++i) {
    std::vector<std::size_t> parents;
    for (std::size_t s = 0; s < i; ++s)
      if (!free_labels(s).empty()) parents.push_back(s);
    if (parents.empty()) throw InvalidArgument("infeasible parameters: alphabet too small");
    auto parent = parents[rng.below(parents.size())];
    auto options = free_labels(parent);
    add(parent, options[rng.below(options.size())], i);
  }
  for (std::size_t s = 0; s < p.states; ++s) {
    for (auto l : labels) {
      const bool have = used.count({s, l}) != 0;
      const bool forced = p.input_enabled && l.kind == LabelKind::input && !have;
      if (forced || (!have && rng.chance(p.density)) ||
          (have && !p.deterministic && rng.chance(p.density / 4)))
        add(s, l, rng.below(p.states));
    }
    if (!p.deterministic && rng.chance(p.tau_probability))
      add(s, Label::tau(), rng.below(p.states));
  }
  std::stable_sort(m.transitions.begin(), m.transitions.end(),
                   [](const auto& a, const auto& b) { return a.source < b.source; });
  m.comments.push_back("generator: seed=" + std::to_string(p.seed) +
                       ", states=" + std::to_string(p.states) +
                       ", density=" + detail::fmt_real(p.density) +
                       (p.deterministic ? ", deterministic" : ", nondeterministic") +
                       (p.input_enabled ? ", input-enabled" : ""));
  return m;
}

/// Randomly drops output transitions (each kept with probability
/// keep_fraction) and the states that become unreachable. Candidates are
/// re-drawn until check_ioco accepts one; after `max_attempts` the specification
/// itself is returned.
inline Iolts submachine(const Iolts& spec, double keep_fraction, std::uint64_t seed,
                        std::size_t max_attempts = 64) {
  if (!(keep_fraction > 0 && keep_fraction <= 1))
    throw InvalidArgument("keep fraction must lie in (0, 1]");
  if (spec.is_quiescence_completed())
    throw InvalidArgument("submachine expects a model without delta");
  SplitMix64 rng(seed);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    Iolts cand = spec;
    cand.transitions.clear();
    for (const auto& t : spec.transitions)
      if (t.label.kind != LabelKind::output || rng.chance(keep_fraction))
        cand.transitions.push_back(t);
    cand = detail::prune_unreachable(cand);
    if (check_ioco(spec, cand).conforms) {
      cand.comments.push_back("submachine: seed=" + std::to_string(seed) +
                              ", keep=" + detail::fmt_real(keep_fraction) +
                              ", retries=" + std::to_string(attempt));
      return cand;
    }
  }
  Iolts same = spec;
  same.comments.push_back("submachine: seed=" + std::to_string(seed) +
                          ", keep=" + detail::fmt_real(keep_fraction) +
                          ", retries exhausted, returning the specification");
  return same;
}

struct Edit {
  enum class Kind { retarget, relabel };
  Kind kind = Kind::retarget;
  std::size_t transition = 0;  // index into transitions
  Transition before;
  Transition after;
};

struct Mutation {
  Iolts model;
  std::vector<Edit> edits;
  std::size_t grown = 0;
};

/// Edits ⌈rate·|T|⌉ distinct transitions, each by a retarget or a relabel
/// within its alphabet class, chosen uniformly among edits that keep a
/// deterministic model deterministic. `grow` then appends fresh states, each
/// entered from an existing state and copying another state's moves.
inline Mutation mutate(const Iolts& m, double rate, std::uint64_t seed,
                       std::size_t grow = 0) {
  if (!(rate > 0 && rate <= 1)) throw InvalidArgument("mutation rate must lie in (0, 1]");
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < m.transitions.size(); ++i)
    if (m.label_name(m.transitions[i].label) != kDelta) candidates.push_back(i);
  if (candidates.empty()) throw InvalidArgument("model has no transitions to mutate");
  const auto wanted = std::max<std::size_t>(
      1, static_cast<std::size_t>(
             std::ceil(rate * static_cast<double>(candidates.size()) - 1e-9)));

  const bool det = m.is_deterministic();
  Mutation out{m, {}, 0};
  auto& model = out.model;
  SplitMix64 rng(seed);
  for (std::size_t i = candidates.size(); i > 1; --i)
    std::swap(candidates[i - 1], candidates[rng.below(i)]);

  for (auto idx : candidates) {
    if (out.edits.size() == wanted) break;
    const Transition cur = model.transitions[idx];
    std::vector<Transition> options;
    auto clashes = [&](const Transition& t) {
      for (std::size_t j = 0; j < model.transitions.size(); ++j) {
        if (j == idx) continue;
        const auto& o = model.transitions[j];
        if (o.source != t.source || o.label != t.label) continue;
        if (det || o.target == t.target) return true;
      }
      return false;
    };
    for (std::size_t s = 0; s < model.size(); ++s) {
      Transition t{cur.source, cur.label, s};
      if (s != cur.target && !clashes(t)) options.push_back(t);
    }
    if (cur.label.kind != LabelKind::tau) {
      const auto& pool = cur.label.kind == LabelKind::input ? model.inputs : model.outputs;
      for (std::size_t l = 0; l < pool.size(); ++l) {
        if (l == cur.label.index || pool[l] == kDelta) continue;
        Transition t{cur.source, {cur.label.kind, l}, cur.target};
        if (!clashes(t)) options.push_back(t);
      }
    }
    if (options.empty()) continue;
    const auto pick = options[rng.below(options.size())];
    out.edits.push_back({pick.label == cur.label ? Edit::Kind::retarget
                                                 : Edit::Kind::relabel,
                         idx, cur, pick});
    model.transitions[idx] = pick;
  }
  if (out.edits.size() < wanted)
    throw InvalidArgument("infeasible mutation: only " + std::to_string(out.edits.size()) +
                          " of " + std::to_string(wanted) + " edits are legal");

  for (std::size_t g = 0; g < grow; ++g) {
    std::string name;
    for (std::size_t k = model.size();; ++k) {
      name = "g" + std::to_string(k);
      if (!model.state_index(name)) break;
    }
    const auto fresh = model.states.size();
    const auto labels = detail::all_labels(model);
    std::vector<std::pair<std::size_t, Label>> entries;
    for (std::size_t s = 0; s < fresh; ++s)
      for (auto l : labels) {
        bool taken = std::any_of(model.transitions.begin(), model.transitions.end(),
                                 [&](const auto& t) { return t.source == s && t.label == l; });
        if (!det || !taken) entries.emplace_back(s, l);
      }
    if (entries.empty()) break;
    model.states.push_back(name);
    auto [from, label] = entries[rng.below(entries.size())];
    const auto donor = rng.below(fresh);
    std::vector<Transition> copied;
    for (const auto& t : model.transitions)
      if (t.source == donor && model.label_name(t.label) != kDelta)
        copied.push_back({fresh, t.label, t.target});
    model.transitions.push_back({from, label, fresh});
    model.transitions.insert(model.transitions.end(), copied.begin(), copied.end());
    ++out.grown;
  }

  model.comments.push_back("generator: seed=" + std::to_string(seed) +
                           ", rate=" + detail::fmt_real(rate) +
                           ", edits=" + std::to_string(out.edits.size()) +
                           (out.grown ? ", grow=" + std::to_string(out.grown) : ""));
  for (const auto& e : out.edits)
    model.comments.push_back(
        "edit: " + m.states[e.before.source] + " " + m.label_name(e.before.label) +
        " " + m.states[e.before.target] + " -> " + model.states[e.after.source] +
        " " + model.label_name(e.after.label) + " " + model.states[e.after.target]);
  return out;
}

/// Adds a self-loop for every input a state does not accept.
inline Iolts angelic_input_enable(const Iolts& m) {
  Iolts out = m;
  std::set<std::pair<std::size_t, std::size_t>> enabled;
  for (const auto& t : m.transitions)
    if (t.label.kind == LabelKind::input) enabled.emplace(t.source, t.label.index);
  std::size_t added = 0;
  for (std::size_t s = 0; s < m.size(); ++s)
    for (std::size_t i = 0; i < m.inputs.size(); ++i)
      if (!enabled.count({s, i})) {
        out.transitions.push_back({s, Label::input(i), s});
        ++added;
      }
  if (added) out.comments.push_back("angelic input completion: " + std::to_string(added) +
                                    " self-loops");
  return out;
}

}  // namespace ioconf
