#pragma once

// Token regular expressions over action names.
//
// Literals are whole action names separated by whitespace; the operators
// `|`, `*`, `(` and `)` also split tokens. `%empty` is the empty word and
// `%void` the empty language. `δ` is accepted as a spelling of `delta`.

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ioconf/dfsa.hpp"
#include "ioconf/error.hpp"
#include "ioconf/token.hpp"

namespace ioconf {

namespace regex_detail {

// Thompson automaton; token kEps marks an epsilon move.
struct Nfa {
  static constexpr std::size_t kEps = static_cast<std::size_t>(-1);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> edges;

  std::size_t add() {
    edges.emplace_back();
    return edges.size() - 1;
  }
  void link(std::size_t from, std::size_t token, std::size_t to) {
    edges[from].emplace_back(token, to);
  }
};

struct Fragment {
  std::size_t start, accept;
};

inline std::vector<std::string> tokenize(std::string_view src) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(std::exchange(cur, {}));
  };
  for (std::size_t i = 0; i < src.size(); ++i) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      flush();
    } else if (c == '(' || c == ')' || c == '|' || c == '*') {
      flush();
      out.emplace_back(1, c);
    } else {
      cur += c;
    }
  }
  flush();
  return out;
}

class Parser {
 public:
  Parser(std::vector<std::string> tokens, const std::vector<std::string>& alphabet,
         Nfa& nfa)
      : tokens_(std::move(tokens)), alphabet_(alphabet), nfa_(nfa) {}

  Fragment parse() {
    if (tokens_.empty()) throw ParseError("regex syntax error: empty expression");
    auto f = alternation();
    if (pos_ != tokens_.size())
      throw ParseError("regex syntax error: unexpected '" + tokens_[pos_] + "'");
    return f;
  }

 private:
  bool at(std::string_view t) const {
    return pos_ < tokens_.size() && tokens_[pos_] == t;
  }

  Fragment alternation() {
    auto f = concatenation();
    while (at("|")) {
      ++pos_;
      auto g = concatenation();
      auto s = nfa_.add(), a = nfa_.add();
      nfa_.link(s, Nfa::kEps, f.start);
      nfa_.link(s, Nfa::kEps, g.start);
      nfa_.link(f.accept, Nfa::kEps, a);
      nfa_.link(g.accept, Nfa::kEps, a);
      f = {s, a};
    }
    return f;
  }

  Fragment concatenation() {
    if (pos_ == tokens_.size() || at("|") || at(")"))
      throw ParseError("regex syntax error: missing operand");
    auto f = starred();
    while (pos_ < tokens_.size() && !at("|") && !at(")")) {
      auto g = starred();
      nfa_.link(f.accept, Nfa::kEps, g.start);
      f.accept = g.accept;
    }
    return f;
  }

  Fragment starred() {
    auto f = atom();
    while (at("*")) {
      ++pos_;
      auto s = nfa_.add(), a = nfa_.add();
      nfa_.link(s, Nfa::kEps, f.start);
      nfa_.link(s, Nfa::kEps, a);
      nfa_.link(f.accept, Nfa::kEps, f.start);
      nfa_.link(f.accept, Nfa::kEps, a);
      f = {s, a};
    }
    return f;
  }

  Fragment atom() {
    const auto& t = tokens_[pos_];
    if (t == "(") {
      ++pos_;
      auto f = alternation();
      if (!at(")")) throw ParseError("regex syntax error: missing ')'");
      ++pos_;
      return f;
    }
    if (t == "*" || t == ")" || t == "|")
      throw ParseError("regex syntax error: unexpected '" + t + "'");
    ++pos_;
    auto s = nfa_.add(), a = nfa_.add();
    if (t == "%empty") {
      nfa_.link(s, Nfa::kEps, a);
    } else if (t == "%void") {
      // no edge: accepts nothing
    } else {
      nfa_.link(s, literal(t), a);
    }
    return {s, a};
  }

  std::size_t literal(const std::string& raw) const {
    const std::string name = raw == "δ" ? std::string(kDelta) : raw;
    for (std::size_t i = 0; i < alphabet_.size(); ++i)
      if (alphabet_[i] == name) return i;
    throw AlphabetError("literal '" + raw + "' not in alphabet {" +
                        join(alphabet_) + "}");
  }

  std::vector<std::string> tokens_;
  const std::vector<std::string>& alphabet_;
  Nfa& nfa_;
  std::size_t pos_ = 0;
};

inline std::vector<std::size_t> eps_closure(const Nfa& nfa,
                                            std::vector<std::size_t> seeds) {
  std::set<std::size_t> seen(seeds.begin(), seeds.end());
  while (!seeds.empty()) {
    auto s = seeds.back();
    seeds.pop_back();
    for (auto [tok, to] : nfa.edges[s])
      if (tok == Nfa::kEps && seen.insert(to).second) seeds.push_back(to);
  }
  return {seen.begin(), seen.end()};
}

inline Dfsa nfa_to_dfsa(const Nfa& nfa, std::size_t start,
                        const std::set<std::size_t>& accepting,
                        const std::vector<std::string>& alphabet) {
  Dfsa out(alphabet);
  std::map<std::vector<std::size_t>, std::size_t> ids;
  std::vector<std::vector<std::size_t>> subsets;
  auto intern = [&](std::vector<std::size_t> set) {
    auto [it, fresh] = ids.try_emplace(set, subsets.size());
    if (fresh) {
      bool acc = std::any_of(set.begin(), set.end(),
                             [&](auto s) { return accepting.count(s) != 0; });
      out.add_state(acc);
      subsets.push_back(std::move(set));
    }
    return it->second;
  };
  out.set_initial(intern(eps_closure(nfa, {start})));
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    for (std::size_t tok = 0; tok < alphabet.size(); ++tok) {
      std::vector<std::size_t> step;
      for (auto s : subsets[i])
        for (auto [t, to] : nfa.edges[s])
          if (t == tok) step.push_back(to);
      if (step.empty()) continue;
      out.set_next(i, tok, intern(eps_closure(nfa, std::move(step))));
    }
  }
  return minimize(out);
}

}  // namespace regex_detail

/// Compiles a token regex to a minimal complete automaton over `alphabet`.
inline Dfsa compile_regex(std::string_view src,
                          const std::vector<std::string>& alphabet) {
  regex_detail::Nfa nfa;
  regex_detail::Parser parser(regex_detail::tokenize(src), alphabet, nfa);
  auto frag = parser.parse();
  return regex_detail::nfa_to_dfsa(nfa, frag.start, {frag.accept}, alphabet);
}

/// Minimal complete automaton for a finite set of words.
inline Dfsa compile_finite(const std::vector<Word>& words,
                           const std::vector<std::string>& alphabet) {
  regex_detail::Nfa nfa;
  auto start = nfa.add();
  std::set<std::size_t> accepting;
  for (const auto& w : words) {
    auto cur = start;
    for (const auto& raw : w) {
      const std::string name = raw == "δ" ? std::string(kDelta) : raw;
      auto it = std::find(alphabet.begin(), alphabet.end(), name);
      if (it == alphabet.end())
        throw AlphabetError("literal '" + raw + "' not in alphabet {" +
                            join(alphabet) + "}");
      auto nxt = nfa.add();
      nfa.link(cur, static_cast<std::size_t>(it - alphabet.begin()), nxt);
      cur = nxt;
    }
    accepting.insert(cur);
  }
  return regex_detail::nfa_to_dfsa(nfa, start, accepting, alphabet);
}

/// Reads a language file: either one regex line, or the directive line
/// `#finite` followed by one word per line (`%empty` for the empty word).
/// Other `#` lines and blank lines are ignored. A file with no regex line
/// denotes the empty language.
inline Dfsa compile_language_file(std::string_view text,
                                  const std::vector<std::string>& alphabet) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> lines;
  bool finite = false, first = true;
  for (std::string raw; std::getline(in, raw);) {
    auto b = raw.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    std::string line = raw.substr(b);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                             line.back() == '\t'))
      line.pop_back();
    if (line[0] == '#') {
      if (first && line == "#finite") finite = true;
      first = false;
      continue;
    }
    first = false;
    lines.push_back(line);
  }
  if (finite) {
    std::vector<Word> words;
    for (const auto& l : lines) {
      Word w;
      std::istringstream ws(l);
      for (std::string t; ws >> t;)
        if (t != "%empty") w.push_back(t);
      words.push_back(std::move(w));
    }
    return compile_finite(words, alphabet);
  }
  if (lines.empty()) return empty_language(alphabet);
  if (lines.size() > 1)
    throw ParseError("regex file must hold a single expression line (use #finite for word lists)");
  return compile_regex(lines[0], alphabet);
}

}  // namespace ioconf
