#include <gtest/gtest.h>

#include "ioconf/dfsa.hpp"
#include "ioconf/iolts.hpp"
#include "ioconf/modelgen.hpp"
#include "ioconf/regex.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace ioconf;
using namespace ioconf::test;

namespace {

const std::vector<std::string> kAbx{"a", "b", "x"};

std::vector<Word> sample_words(std::uint64_t seed, std::size_t count,
                               const std::vector<std::string>& alphabet) {
  SplitMix64 rng(seed);
  std::vector<Word> out;
  for (std::size_t i = 0; i < count; ++i) {
    Word word(rng.below(7));
    for (auto& t : word) t = alphabet[rng.below(alphabet.size())];
    out.push_back(std::move(word));
  }
  return out;
}

Dfsa random_dfsa(std::uint64_t seed, const std::vector<std::string>& alphabet) {
  SplitMix64 rng(seed);
  Dfsa a(alphabet);
  const std::size_t n = 1 + rng.below(5);
  for (std::size_t s = 0; s < n; ++s) a.add_state(rng.chance(0.4));
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < alphabet.size(); ++t)
      if (rng.chance(0.7)) a.set_next(s, t, rng.below(n));
  return a;
}

}  // namespace

TEST(Dfsa, TransitionsAreSingleValued) {
  Dfsa a({"a", "b"});
  a.add_state(false);
  a.add_state(true);
  EXPECT_EQ(a.next(0, 0), Dfsa::kNone);
  a.set_next(0, 0, 1);
  a.set_next(0, 0, 0);
  EXPECT_EQ(a.next(0, 0), 0);
  EXPECT_FALSE(a.is_complete());
}

TEST(Complete, IsIdempotentOnCompleteAutomata) {
  const auto u = universal_language({"a"});
  ASSERT_TRUE(u.is_complete());
  EXPECT_EQ(complete(u).size(), u.size());
  const auto e = complete(empty_language({"a"}));
  EXPECT_EQ(e.size(), 1u);
  EXPECT_EQ(complete(e).size(), 1u);
}

TEST(Complete, PartialM1GetsOneSink) {
  const auto d = complete(determinize(m1()));
  EXPECT_EQ(d.size(), 3u);
  EXPECT_TRUE(d.is_complete());
  EXPECT_TRUE(d.accepts(w({"a", "x"})));
  EXPECT_FALSE(d.accepts(w({"x"})));
}

TEST(Complement, OfM1AcceptsNonTraces) {
  const auto c = complement(determinize(m1()));
  EXPECT_TRUE(c.accepts(w({"x"})));
  EXPECT_TRUE(c.accepts(w({"a", "a"})));
  EXPECT_FALSE(c.accepts(w({"a", "x"})));
  EXPECT_FALSE(c.accepts(Word{}));
}

TEST(Complement, IsAnInvolution) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto a = random_dfsa(seed, kAbx);
    const auto cc = complement(complement(a));
    for (const auto& word : sample_words(seed, 100, kAbx))
      EXPECT_EQ(cc.accepts(word), a.accepts(word));
  }
}

TEST(Complement, OfUniversalIsEmpty) {
  EXPECT_TRUE(is_empty(complement(universal_language(kAbx))));
}

TEST(Product, IntersectionWithComplementIsEmpty) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto a = random_dfsa(seed, kAbx);
    EXPECT_TRUE(is_empty(intersect(a, complement(a))));
  }
}

TEST(Product, MatchesMembershipAndSizeBound) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto a = random_dfsa(seed, kAbx);
    const auto b = random_dfsa(seed + 1000, kAbx);
    const auto i = intersect(a, b);
    const auto u = unite(a, b);
    EXPECT_LE(i.size(), (a.size() + 1) * (b.size() + 1));
    EXPECT_LE(u.size(), (a.size() + 1) * (b.size() + 1));
    for (const auto& word : sample_words(seed, 100, kAbx)) {
      EXPECT_EQ(i.accepts(word), a.accepts(word) && b.accepts(word));
      EXPECT_EQ(u.accepts(word), a.accepts(word) || b.accepts(word));
    }
  }
}

TEST(Product, UnionWithEmptyIsIdentity) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto b = random_dfsa(seed, kAbx);
    const auto u = unite(empty_language(kAbx), b);
    for (const auto& word : sample_words(seed, 100, kAbx))
      EXPECT_EQ(u.accepts(word), b.accepts(word));
  }
}

TEST(Product, AxSuffixOutsideM1) {
  // M1 over {a, b, x}: b never occurs.
  const auto spec = parse_model("states: s0 s1\ninitial: s0\ninputs: a b\noutputs: x\n"
                                "transitions:\ns0 a s1\ns1 x s0\n");
  const auto d = compile_regex("( a | b ) * a x", kAbx);
  const auto c = intersect(d, complement(determinize(spec, kAbx)));
  const auto witness = shortest_witness(c);
  ASSERT_TRUE(witness);
  EXPECT_EQ(*witness, w({"a", "a", "x"}));
  EXPECT_TRUE(d.accepts(*witness));
  EXPECT_FALSE(oracle::in_otr(spec, *witness));
}

TEST(Product, AlphabetMismatchThrows) {
  EXPECT_THROW(intersect(universal_language({"a"}), universal_language({"b"})), AlphabetError);
  // Same set, different order: aligned, not rejected.
  EXPECT_NO_THROW(intersect(universal_language({"a", "b"}), universal_language({"b", "a"})));
}

TEST(ShortestWitness, EmptyLanguageHasNone) {
  EXPECT_FALSE(shortest_witness(empty_language(kAbx)));
  EXPECT_TRUE(is_empty(empty_language(kAbx)));
}

TEST(ShortestWitness, PrefersShortestThenAlphabetOrder) {
  const auto a = compile_finite({w({"a", "x"}), w({"a", "a", "x"})}, kAbx);
  EXPECT_EQ(*shortest_witness(a), w({"a", "x"}));
  const auto b = compile_finite({w({"b", "a"}), w({"a", "b"})}, {"a", "b"});
  EXPECT_EQ(*shortest_witness(b), w({"a", "b"}));
  const auto c = compile_finite({w({"b", "a"}), w({"a", "b"})}, {"b", "a"});
  EXPECT_EQ(*shortest_witness(c), w({"b", "a"}));
  EXPECT_EQ(*shortest_witness(universal_language(kAbx)), Word{});
}

TEST(Minimize, PreservesLanguageAndIsMinimal) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto a = random_dfsa(seed, kAbx);
    const auto m = minimize(a);
    EXPECT_LE(m.size(), complete(a).size());
    EXPECT_EQ(minimize(m).size(), m.size());
    for (const auto& word : oracle::all_words(kAbx, 5))
      EXPECT_EQ(m.accepts(word), a.accepts(word)) << format_word(word);
  }
}

TEST(AcceptedWords, EnumeratesByLength) {
  const auto a = compile_regex("a ( x | b ) *", kAbx);
  const auto words = accepted_words_up_to(a, 2);
  EXPECT_EQ(std::set<Word>(words.begin(), words.end()),
            (std::set<Word>{w({"a"}), w({"a", "x"}), w({"a", "b"})}));
}
