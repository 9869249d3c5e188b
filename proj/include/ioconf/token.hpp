#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace ioconf {

inline constexpr std::string_view kTau = "tau";
inline constexpr std::string_view kDelta = "delta";
inline constexpr std::string_view kPass = "pass";
inline constexpr std::string_view kFail = "fail";

/// An observable word: a sequence of action names, never containing tau.
using Word = std::vector<std::string>;

inline bool is_reserved_name(std::string_view name) {
  return name == kTau || name == kDelta || name == kPass || name == kFail;
}

/// Action and state names are non-empty runs of [a-zA-Z0-9_].
inline bool is_valid_name(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_';
  });
}

inline std::string join(std::span<const std::string> words,
                        std::string_view sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += sep;
    out += words[i];
  }
  return out;
}

/// Renders a word for humans; the empty word prints as "ε".
inline std::string format_word(const Word& w) {
  return w.empty() ? std::string("ε") : join(w);
}

/// True when `a` and `b` hold the same names, ignoring order.
inline bool same_token_set(std::span<const std::string> a,
                           std::span<const std::string> b) {
  if (a.size() != b.size()) return false;
  std::unordered_set<std::string> lhs(a.begin(), a.end());
  return std::all_of(b.begin(), b.end(),
                     [&](const std::string& t) { return lhs.count(t) != 0; });
}

}  // namespace ioconf
