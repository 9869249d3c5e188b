#pragma once

// Conformance checking: ioco by synchronized traversal of the determinized
// models, and the language relation conf_{D,F} through a fault-suite
// automaton whose accepted words are exactly the fault-revealing traces.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "ioconf/dfsa.hpp"
#include "ioconf/error.hpp"
#include "ioconf/iolts.hpp"

namespace ioconf {

/// Automaton sizes behind a verdict. `suite_bound` is (n_S+1)^2 n_D n_F.
struct SuiteStats {
  std::size_t spec_states = 0;       // n_S: states of det(spec)
  std::size_t iut_states = 0;        // n_I: states of det(iut)
  std::size_t desirable_states = 0;  // n_D
  std::size_t forbidden_states = 0;  // n_F
  std::size_t alphabet_size = 0;     // n_L, delta included
  std::size_t suite_states = 0;
  std::size_t suite_bound = 0;
};

struct Verdict {
  bool conforms = true;
  std::vector<Word> witnesses;  // empty iff conforms
  SuiteStats stats;
};

enum class WitnessStrategy { single, cover };

inline std::size_t suite_state_bound(std::size_t n_s, std::size_t n_d,
                                     std::size_t n_f) {
  return (n_s + 1) * (n_s + 1) * n_d * n_f;
}

namespace detail {

inline void require_same_alphabets(const Iolts& spec, const Iolts& iut) {
  if (!same_token_set(spec.inputs, iut.inputs) ||
      !same_token_set(spec.user_outputs(), iut.user_outputs()))
    throw AlphabetError("spec and iut alphabets differ: inputs {" +
                        join(spec.inputs) + "}/{" + join(iut.inputs) +
                        "}, outputs {" + join(spec.outputs) + "}/{" +
                        join(iut.outputs) + "}");
}

inline bool shortlex_less(const std::vector<std::size_t>& a,
                          const std::vector<std::size_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

inline Word to_word(const Dfsa& a, const std::vector<std::size_t>& w) {
  Word out;
  out.reserve(w.size());
  for (auto t : w) out.push_back(a.alphabet()[t]);
  return out;
}

}  // namespace detail

/// Accepting words that cover every transition of iut × suite lying on some
/// path to an accepting product state. Shortlex order; empty iff the
/// product language is empty.
inline std::vector<Word> witnesses_transition_cover(const Dfsa& iut,
                                                    const Dfsa& suite) {
  const Dfsa p = intersect(iut, suite);
  const auto live = coreachable(p);
  if (p.size() == 0 || !live[p.initial()]) return {};
  const std::size_t n = p.size(), k = p.alphabet_size();

  // Shortlex-minimal access word per state.
  std::vector<std::int64_t> parent(n, -2);
  std::vector<std::size_t> via(n, 0);
  std::deque<std::size_t> queue{p.initial()};
  parent[p.initial()] = -1;
  while (!queue.empty()) {
    auto s = queue.front();
    queue.pop_front();
    for (std::size_t t = 0; t < k; ++t) {
      auto m = p.next(s, t);
      if (m == Dfsa::kNone || parent[m] != -2) continue;
      parent[m] = static_cast<std::int64_t>(s);
      via[m] = t;
      queue.push_back(static_cast<std::size_t>(m));
    }
  }
  auto access = [&](std::size_t s) {
    std::vector<std::size_t> w;
    for (auto cur = static_cast<std::int64_t>(s); parent[cur] >= 0;
         cur = parent[cur])
      w.push_back(via[cur]);
    std::reverse(w.begin(), w.end());
    return w;
  };

  // Distance to acceptance, for shortlex-minimal completions.
  constexpr std::size_t kInf = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(n, kInf);
  std::vector<std::vector<std::size_t>> preds(n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < k; ++t)
      if (auto m = p.next(s, t); m != Dfsa::kNone) preds[m].push_back(s);
  for (std::size_t s = 0; s < n; ++s)
    if (p.is_accepting(s)) {
      dist[s] = 0;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    auto s = queue.front();
    queue.pop_front();
    for (auto q : preds[s])
      if (dist[q] == kInf) {
        dist[q] = dist[s] + 1;
        queue.push_back(q);
      }
  }
  auto completion = [&](std::size_t s) {
    std::vector<std::size_t> w;
    while (dist[s] != 0) {
      for (std::size_t t = 0; t < k; ++t) {
        auto m = p.next(s, t);
        if (m != Dfsa::kNone && dist[m] + 1 == dist[s]) {
          w.push_back(t);
          s = static_cast<std::size_t>(m);
          break;
        }
      }
    }
    return w;
  };

  // One candidate word per relevant transition.
  std::vector<std::vector<std::size_t>> candidates;
  for (std::size_t s = 0; s < n; ++s) {
    if (parent[s] == -2) continue;
    for (std::size_t t = 0; t < k; ++t) {
      auto m = p.next(s, t);
      if (m == Dfsa::kNone || !live[m]) continue;
      auto w = access(s);
      w.push_back(t);
      auto tail = completion(static_cast<std::size_t>(m));
      w.insert(w.end(), tail.begin(), tail.end());
      candidates.push_back(std::move(w));
    }
  }
  std::sort(candidates.begin(), candidates.end(), detail::shortlex_less);
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  // Keep a candidate only if it covers a not-yet-covered transition.
  std::set<std::pair<std::size_t, std::size_t>> covered;
  std::vector<Word> out;
  for (const auto& w : candidates) {
    bool fresh = false;
    std::size_t s = p.initial();
    for (auto t : w) {
      auto m = static_cast<std::size_t>(p.next(s, t));
      if (live[m]) fresh |= covered.emplace(s, t).second;
      s = m;
    }
    if (fresh) out.push_back(detail::to_word(p, w));
  }
  return out;
}

/// Automaton for otr(spec)·(L_U ∪ {delta}): a spec trace followed by any
/// output, over the specification's observable alphabet.
inline Dfsa traces_then_output(const Iolts& spec_in) {
  const Iolts spec = ensure_quiescence(spec_in);
  const Dfsa traces = determinize(spec);
  const std::size_t k = traces.alphabet_size();
  const std::size_t first_output = spec.inputs.size();
  // States are (trace state or none, last token was an output after a trace).
  constexpr std::size_t kDead = static_cast<std::size_t>(-1);
  Dfsa out(traces.alphabet());
  std::map<std::pair<std::size_t, bool>, std::size_t> ids;
  std::deque<std::pair<std::size_t, bool>> queue;
  auto intern = [&](std::size_t s, bool ended) {
    auto [it, fresh] = ids.try_emplace({s, ended}, out.size());
    if (fresh) {
      out.add_state(ended);
      queue.emplace_back(s, ended);
    }
    return it->second;
  };
  out.set_initial(intern(traces.initial(), false));
  while (!queue.empty()) {
    auto [s, ended] = queue.front();
    queue.pop_front();
    auto from = ids.at({s, ended});
    for (std::size_t t = 0; t < k; ++t) {
      std::size_t next = kDead;
      if (s != kDead && traces.next(s, t) != Dfsa::kNone)
        next = static_cast<std::size_t>(traces.next(s, t));
      bool now_ended = s != kDead && t >= first_output;
      if (next == kDead && !now_ended) continue;  // partial; complete() adds the sink
      out.set_next(from, t, intern(next, now_ended));
    }
  }
  return out;
}

/// The complete fault-suite automaton C with
/// L(C) = (L(d) ∩ ~otr(spec)) ∪ (L(f) ∩ otr(spec)).
inline Dfsa build_fault_suite(const Iolts& spec_in, const Dfsa& d, const Dfsa& f,
                              SuiteStats* stats = nullptr) {
  const Iolts spec = ensure_quiescence(spec_in);
  const Dfsa a1 = determinize(spec);
  if (!same_token_set(a1.alphabet(), d.alphabet()) ||
      !same_token_set(a1.alphabet(), f.alphabet()))
    throw AlphabetError("D/F alphabets must equal the specification's observable alphabet {" +
                        join(a1.alphabet()) + "}");
  const Dfsa dc = complete(d), fc = complete(f);
  const Dfsa a2 = intersect(complete(a1), fc);  // F ∩ otr(S)
  const Dfsa b2 = intersect(complement(a1), dc);  // D ∩ ~otr(S)
  Dfsa c = unite(a2, b2);
  if (stats) {
    stats->spec_states = a1.size();
    stats->desirable_states = dc.size();
    stats->forbidden_states = fc.size();
    stats->alphabet_size = a1.alphabet_size();
    stats->suite_states = c.size();
    stats->suite_bound = suite_state_bound(a1.size(), dc.size(), fc.size());
  }
  return c;
}

/// I ioco S, decided on det(S) × det(I). Models are quiescence-completed
/// first when needed.
inline Verdict check_ioco(const Iolts& spec_in, const Iolts& iut_in,
                          WitnessStrategy strategy = WitnessStrategy::single) {
  detail::require_same_alphabets(spec_in, iut_in);
  const Iolts spec = ensure_quiescence(spec_in);
  const Iolts iut = ensure_quiescence(iut_in);
  const auto alphabet = spec.observable_alphabet();
  const Dfsa ds = determinize(spec, alphabet);
  const Dfsa di = determinize(iut, alphabet);
  const std::size_t k = alphabet.size(), first_output = spec.inputs.size();

  Verdict v;
  v.stats.spec_states = ds.size();
  v.stats.iut_states = di.size();
  v.stats.alphabet_size = k;

  struct Node {
    std::size_t s, i;
    std::int64_t parent;
    std::size_t via;
  };
  std::vector<Node> nodes{{ds.initial(), di.initial(), -1, 0}};
  std::set<std::pair<std::size_t, std::size_t>> seen{{ds.initial(), di.initial()}};
  std::optional<std::vector<std::size_t>> fault;
  for (std::size_t head = 0; head < nodes.size() && !fault; ++head) {
    const auto [s, i, parent, via] = nodes[head];
    for (std::size_t t = 0; t < k; ++t) {
      auto ni = di.next(i, t);
      if (ni == Dfsa::kNone) continue;  // IUT refuses: nothing to compare
      auto ns = ds.next(s, t);
      if (ns == Dfsa::kNone) {
        if (t < first_output) continue;  // input unspecified in the specification
        std::vector<std::size_t> w{t};
        for (auto cur = static_cast<std::int64_t>(head); nodes[cur].parent >= 0;
             cur = nodes[cur].parent)
          w.push_back(nodes[cur].via);
        std::reverse(w.begin(), w.end());
        fault = std::move(w);
        break;
      }
      if (seen.emplace(ns, ni).second)
        nodes.push_back({static_cast<std::size_t>(ns),
                         static_cast<std::size_t>(ni),
                         static_cast<std::int64_t>(head), t});
    }
  }
  if (!fault) return v;
  v.conforms = false;
  if (strategy == WitnessStrategy::single) {
    v.witnesses.push_back(detail::to_word(ds, *fault));
  } else {
    const Dfsa suite =
        build_fault_suite(spec, traces_then_output(spec),
                          empty_language(alphabet), &v.stats);
    v.stats.iut_states = di.size();
    v.witnesses = witnesses_transition_cover(di, suite);
  }
  return v;
}

/// I conf_{D,F} S: no IUT trace lies in the fault suite of (spec, d, f).
inline Verdict check_lang(const Iolts& spec_in, const Iolts& iut_in,
                          const Dfsa& d, const Dfsa& f,
                          WitnessStrategy strategy = WitnessStrategy::single) {
  detail::require_same_alphabets(spec_in, iut_in);
  const Iolts spec = ensure_quiescence(spec_in);
  const Iolts iut = ensure_quiescence(iut_in);
  Verdict v;
  const Dfsa suite = build_fault_suite(spec, d, f, &v.stats);
  const Dfsa di = determinize(iut, suite.alphabet());
  v.stats.iut_states = di.size();
  if (strategy == WitnessStrategy::single) {
    if (auto w = shortest_witness(intersect(di, suite))) v.witnesses.push_back(*w);
  } else {
    v.witnesses = witnesses_transition_cover(di, suite);
  }
  v.conforms = v.witnesses.empty();
  return v;
}

}  // namespace ioconf
