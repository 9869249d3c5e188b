#pragma once

// Deterministic finite automata over named action tokens.
//
// A Dfsa owns its alphabet in declaration order; that order is the
// tie-break for every "smallest word" query below. Transitions are a
// partial table: kNone marks an undefined (state, token) pair.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ioconf/error.hpp"
#include "ioconf/token.hpp"

namespace ioconf {

class Dfsa {
 public:
  static constexpr std::int32_t kNone = -1;

  Dfsa() = default;
  explicit Dfsa(std::vector<std::string> alphabet)
      : alphabet_(std::move(alphabet)) {}

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  std::size_t alphabet_size() const { return alphabet_.size(); }
  std::size_t size() const { return accepting_.size(); }
  std::size_t initial() const { return initial_; }
  bool is_accepting(std::size_t s) const { return accepting_[s]; }

  std::size_t add_state(bool accepting = false) {
    accepting_.push_back(accepting);
    table_.resize(table_.size() + alphabet_.size(), kNone);
    return accepting_.size() - 1;
  }
  void set_initial(std::size_t s) { initial_ = s; }
  void set_accepting(std::size_t s, bool value) { accepting_[s] = value; }

  std::int32_t next(std::size_t s, std::size_t token) const {
    return table_[s * alphabet_.size() + token];
  }
  void set_next(std::size_t s, std::size_t token, std::size_t target) {
    table_[s * alphabet_.size() + token] = static_cast<std::int32_t>(target);
  }

  std::optional<std::size_t> token_index(std::string_view name) const {
    for (std::size_t i = 0; i < alphabet_.size(); ++i)
      if (alphabet_[i] == name) return i;
    return std::nullopt;
  }

  bool is_complete() const {
    return std::find(table_.begin(), table_.end(), kNone) == table_.end();
  }

  std::size_t accepting_count() const {
    return static_cast<std::size_t>(
        std::count(accepting_.begin(), accepting_.end(), true));
  }

  /// Membership; a token outside the alphabet rejects.
  bool accepts(const Word& w) const {
    if (accepting_.empty()) return false;
    std::size_t s = initial_;
    for (const auto& name : w) {
      auto t = token_index(name);
      if (!t) return false;
      auto n = next(s, *t);
      if (n == kNone) return false;
      s = static_cast<std::size_t>(n);
    }
    return accepting_[s];
  }

  bool accepts_indices(std::span<const std::size_t> w) const {
    if (accepting_.empty()) return false;
    std::size_t s = initial_;
    for (auto t : w) {
      auto n = next(s, t);
      if (n == kNone) return false;
      s = static_cast<std::size_t>(n);
    }
    return accepting_[s];
  }

 private:
  std::vector<std::string> alphabet_;
  std::size_t initial_ = 0;
  std::vector<bool> accepting_;
  std::vector<std::int32_t> table_;
};

/// One non-accepting state with no transitions (completed: a self-loop sink).
inline Dfsa empty_language(std::vector<std::string> alphabet) {
  Dfsa a(std::move(alphabet));
  auto s = a.add_state(false);
  for (std::size_t t = 0; t < a.alphabet_size(); ++t) a.set_next(s, t, s);
  return a;
}

/// Accepts every word over the alphabet.
inline Dfsa universal_language(std::vector<std::string> alphabet) {
  Dfsa a = empty_language(std::move(alphabet));
  a.set_accepting(0, true);
  return a;
}

/// Adds at most one non-accepting sink so every (state, token) is defined.
inline Dfsa complete(const Dfsa& a) {
  if (a.is_complete() && a.size() > 0) return a;
  Dfsa out = a;
  if (out.size() == 0) return empty_language(a.alphabet());
  auto sink = out.add_state(false);
  for (std::size_t s = 0; s < out.size(); ++s)
    for (std::size_t t = 0; t < out.alphabet_size(); ++t)
      if (out.next(s, t) == Dfsa::kNone) out.set_next(s, t, sink);
  return out;
}

/// Completes, then flips the accepting set.
inline Dfsa complement(const Dfsa& a) {
  Dfsa out = complete(a);
  for (std::size_t s = 0; s < out.size(); ++s)
    out.set_accepting(s, !out.is_accepting(s));
  return out;
}

namespace detail {

// Maps each token of `a` to its index in `b`; throws on differing sets.
inline std::vector<std::size_t> align_alphabets(const Dfsa& a, const Dfsa& b) {
  if (!same_token_set(a.alphabet(), b.alphabet()))
    throw AlphabetError("alphabet mismatch: {" + join(a.alphabet()) +
                        "} vs {" + join(b.alphabet()) + "}");
  std::vector<std::size_t> map(a.alphabet_size());
  for (std::size_t t = 0; t < a.alphabet_size(); ++t)
    map[t] = *b.token_index(a.alphabet()[t]);
  return map;
}

template <class Accept>
Dfsa reachable_product(const Dfsa& a, const Dfsa& b, Accept accept) {
  auto map = align_alphabets(a, b);
  Dfsa out(a.alphabet());
  if (a.size() == 0 || b.size() == 0) return empty_language(a.alphabet());
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> ids;
  std::deque<std::pair<std::size_t, std::size_t>> queue;
  auto intern = [&](std::size_t p, std::size_t q) {
    auto [it, fresh] = ids.try_emplace({p, q}, out.size());
    if (fresh) {
      out.add_state(accept(a.is_accepting(p), b.is_accepting(q)));
      queue.emplace_back(p, q);
    }
    return it->second;
  };
  out.set_initial(intern(a.initial(), b.initial()));
  while (!queue.empty()) {
    auto [p, q] = queue.front();
    queue.pop_front();
    auto from = ids.at({p, q});
    for (std::size_t t = 0; t < a.alphabet_size(); ++t) {
      auto np = a.next(p, t);
      auto nq = b.next(q, map[t]);
      if (np == Dfsa::kNone || nq == Dfsa::kNone) continue;
      out.set_next(from, t,
                   intern(static_cast<std::size_t>(np),
                          static_cast<std::size_t>(nq)));
    }
  }
  return out;
}

}  // namespace detail

/// Reachable product accepting L(a) ∩ L(b), over a's token order.
inline Dfsa intersect(const Dfsa& a, const Dfsa& b) {
  return detail::reachable_product(a, b,
                                   [](bool x, bool y) { return x && y; });
}

/// Reachable product of the completed operands accepting L(a) ∪ L(b).
inline Dfsa unite(const Dfsa& a, const Dfsa& b) {
  detail::align_alphabets(a, b);
  return detail::reachable_product(complete(a), complete(b),
                                   [](bool x, bool y) { return x || y; });
}

/// Shortlex-minimal accepted word (shortest, ties by alphabet order).
inline std::optional<Word> shortest_witness(const Dfsa& a) {
  if (a.size() == 0) return std::nullopt;
  std::vector<std::int64_t> parent(a.size(), -2);
  std::vector<std::size_t> via(a.size(), 0);
  std::deque<std::size_t> queue{a.initial()};
  parent[a.initial()] = -1;
  while (!queue.empty()) {
    auto s = queue.front();
    queue.pop_front();
    if (a.is_accepting(s)) {
      Word w;
      for (auto cur = static_cast<std::int64_t>(s); parent[cur] >= 0;
           cur = parent[cur])
        w.push_back(a.alphabet()[via[cur]]);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (std::size_t t = 0; t < a.alphabet_size(); ++t) {
      auto n = a.next(s, t);
      if (n == Dfsa::kNone || parent[n] != -2) continue;
      parent[n] = static_cast<std::int64_t>(s);
      via[n] = t;
      queue.push_back(static_cast<std::size_t>(n));
    }
  }
  return std::nullopt;
}

inline bool is_empty(const Dfsa& a) { return !shortest_witness(a); }

/// States from which an accepting state is reachable.
inline std::vector<bool> coreachable(const Dfsa& a) {
  std::vector<std::vector<std::size_t>> preds(a.size());
  for (std::size_t s = 0; s < a.size(); ++s)
    for (std::size_t t = 0; t < a.alphabet_size(); ++t)
      if (auto n = a.next(s, t); n != Dfsa::kNone) preds[n].push_back(s);
  std::vector<bool> live(a.size(), false);
  std::deque<std::size_t> queue;
  for (std::size_t s = 0; s < a.size(); ++s)
    if (a.is_accepting(s)) {
      live[s] = true;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    auto s = queue.front();
    queue.pop_front();
    for (auto p : preds[s])
      if (!live[p]) {
        live[p] = true;
        queue.push_back(p);
      }
  }
  return live;
}

/// Minimal complete automaton for L(a) by partition refinement.
/// States are numbered in breadth-first order from the initial state.
inline Dfsa minimize(const Dfsa& input) {
  Dfsa a = complete(input);
  const std::size_t n = a.size(), k = a.alphabet_size();

  // Restrict to reachable states first.
  std::vector<bool> reach(n, false);
  std::deque<std::size_t> queue{a.initial()};
  reach[a.initial()] = true;
  while (!queue.empty()) {
    auto s = queue.front();
    queue.pop_front();
    for (std::size_t t = 0; t < k; ++t) {
      auto m = static_cast<std::size_t>(a.next(s, t));
      if (!reach[m]) {
        reach[m] = true;
        queue.push_back(m);
      }
    }
  }

  std::vector<std::size_t> block(n, 0);
  for (std::size_t s = 0; s < n; ++s) block[s] = a.is_accepting(s) ? 1 : 0;
  std::size_t blocks = 0;
  for (;;) {
    std::map<std::vector<std::size_t>, std::size_t> sig_ids;
    std::vector<std::size_t> refined(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
      if (!reach[s]) continue;
      std::vector<std::size_t> sig{block[s]};
      for (std::size_t t = 0; t < k; ++t)
        sig.push_back(block[static_cast<std::size_t>(a.next(s, t))]);
      auto [it, _] = sig_ids.try_emplace(std::move(sig), sig_ids.size());
      refined[s] = it->second;
    }
    block = std::move(refined);
    if (sig_ids.size() == blocks) break;
    blocks = sig_ids.size();
  }

  // Renumber blocks breadth-first from the initial block.
  std::vector<std::size_t> repr(blocks, n);
  for (std::size_t s = 0; s < n; ++s)
    if (reach[s] && repr[block[s]] == n) repr[block[s]] = s;
  Dfsa out(a.alphabet());
  std::vector<std::int64_t> id(blocks, -1);
  std::deque<std::size_t> order{block[a.initial()]};
  id[block[a.initial()]] = 0;
  out.add_state(a.is_accepting(repr[block[a.initial()]]));
  while (!order.empty()) {
    auto b = order.front();
    order.pop_front();
    for (std::size_t t = 0; t < k; ++t) {
      auto nb = block[static_cast<std::size_t>(a.next(repr[b], t))];
      if (id[nb] < 0) {
        id[nb] = static_cast<std::int64_t>(out.add_state(a.is_accepting(repr[nb])));
        order.push_back(nb);
      }
    }
  }
  for (std::size_t b = 0; b < blocks; ++b) {
    if (id[b] < 0) continue;
    for (std::size_t t = 0; t < k; ++t)
      out.set_next(static_cast<std::size_t>(id[b]), t,
                   static_cast<std::size_t>(
                       id[block[static_cast<std::size_t>(a.next(repr[b], t))]]));
  }
  return out;
}

/// Every accepted word of length <= depth, by walking the transition table.
inline std::vector<Word> accepted_words_up_to(const Dfsa& a, std::size_t depth) {
  std::vector<Word> out;
  if (a.size() == 0) return out;
  const auto live = coreachable(a);
  Word w;
  auto walk = [&](auto&& self, std::size_t s) -> void {
    if (a.is_accepting(s)) out.push_back(w);
    if (w.size() == depth) return;
    for (std::size_t t = 0; t < a.alphabet_size(); ++t) {
      auto n = a.next(s, t);
      if (n == Dfsa::kNone || !live[n]) continue;
      w.push_back(a.alphabet()[t]);
      self(self, static_cast<std::size_t>(n));
      w.pop_back();
    }
  };
  walk(walk, a.initial());
  return out;
}

}  // namespace ioconf
