#pragma once

#include <string>

#include "ioconf/iolts.hpp"
#include "ioconf/modelgen.hpp"

namespace ioconf::test {

inline constexpr const char* kM1 = R"(states: s0 s1
initial: s0
inputs: a
outputs: x
transitions:
s0 a s1
s1 x s0
)";

// M1 plus q0 -x-> q0.
inline constexpr const char* kM3 = R"(states: q0 q1
initial: q0
inputs: a
outputs: x
transitions:
q0 a q1
q1 x q0
q0 x q0
)";

// One state, no transitions.
inline constexpr const char* kM4 = R"(states: q0
initial: q0
inputs: a
outputs: x
transitions:
)";

// Four-state spec: s0 -a-> s1 -a-> s3 -b-> s0 -b-> s3 gives the node path
// (0,0) (1,0) (3,0) (0,1) (3,1) for "aabb"; s3 has no x.
inline constexpr const char* kFourState = R"(states: s0 s1 s2 s3
initial: s0
inputs: a b
outputs: x
transitions:
s0 a s1
s0 b s3
s1 a s3
s1 b s2
s1 x s2
s2 x s0
s3 a s3
s3 b s0
)";

inline Iolts m1() { return parse_model(kM1); }
inline Iolts m3() { return parse_model(kM3); }
inline Iolts m4() { return parse_model(kM4); }
inline Iolts four_state() { return parse_model(kFourState); }

inline Word w(std::initializer_list<const char*> tokens) {
  Word out;
  for (auto t : tokens) out.emplace_back(t);
  return out;
}

/// A mutant of `spec`, or `fallback` when no legal edit exists (a saturated
/// one-state model, for instance).
inline Iolts mutant_or(const Iolts& spec, double rate, std::uint64_t seed,
                       const Iolts& fallback) {
  try {
    return mutate(spec, rate, seed).model;
  } catch (const InvalidArgument&) {
    return fallback;
  }
}

}  // namespace ioconf::test
