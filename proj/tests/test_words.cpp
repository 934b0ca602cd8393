/**
 * @file test_words.cpp
 * @brief Word reduction and evaluation, the conjugate translating-word
 *        search with per-condition statistics, freeness certificates, and
 *        near-identity scans.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "paradec/errors.hpp"
#include "paradec/rng.hpp"
#include "paradec/word.hpp"

using namespace paradec;

namespace {

Rational rat(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

QSqrt2 q(long n, long d = 1) { return QSqrt2(rat(n, d)); }

RealAlgebraic ra(long n, long d = 1) { return RealAlgebraic(rat(n, d)); }

std::string random_raw(Rng& rng, int len) {
  static const char kLetters[] = "aAbB";
  std::string w;
  for (int i = 0; i < len; ++i) w.push_back(kLetters[rng.index(4)]);
  return w;
}

}  // namespace

TEST_CASE("reduction: cancellation, whitespace, idempotence, junk") {
  CHECK(word_reduce("") == "");
  CHECK(word_reduce("aA") == "");
  CHECK(word_reduce("abBA") == "");
  CHECK(word_reduce("aabB a") == "aaa");
  CHECK(word_reduce("aBba") == "aa");
  CHECK(word_reduce("abab") == "abab");
  CHECK_THROWS_AS(word_reduce("abc"), ConfigError);
  CHECK_THROWS_AS(word_reduce("a-b"), ConfigError);

  Rng rng(44);
  for (int trial = 0; trial < 200; ++trial) {
    const std::string w = random_raw(rng, static_cast<int>(rng.index(13)));
    const std::string once = word_reduce(w);
    CHECK(word_reduce(once) == once);
    // No adjacent inverse pair survives.
    for (size_t i = 0; i + 1 < once.size(); ++i)
      CHECK(word_reduce(once.substr(i, 2)).size() == 2);
  }
}

TEST_CASE("evaluation: reading-order product, reduction invariance") {
  const GeneratorPair sanov = builtin_pair("sanov");
  CHECK(eval_word("", sanov) == Mat2::identity());
  CHECK(eval_word("a", sanov) == sanov.a);
  CHECK(eval_word("B", sanov) == invert(sanov.b));
  // The worked integer product: "ab" -> (5 2; 2 1).
  CHECK(eval_word("ab", sanov) == Mat2(q(5), q(2), q(2), q(1)));

  const GeneratorPair para = builtin_pair("parabolic-small");
  const GeneratorPair commuting(Mat2(q(1), q(1), q(0), q(1)), Mat2(q(1), q(2), q(0), q(1)),
                                "commuting translations by 1 and 2");
  Rng rng(45);
  for (const GeneratorPair& gens : {sanov, para, commuting}) {
    for (int trial = 0; trial < 50; ++trial) {
      const std::string u = random_raw(rng, static_cast<int>(rng.index(9)));
      const std::string v = random_raw(rng, static_cast<int>(rng.index(9)));
      // Free reduction never changes the evaluation, free pair or not.
      CHECK(eval_word(word_reduce(u), gens) == eval_word(u, gens));
      // Literal product: eval(uv) = eval(u) * eval(v); compose(g, h) carries
      // the product M_h * M_g, hence the swapped arguments.
      CHECK(eval_word(u + v, gens) == compose(eval_word(v, gens), eval_word(u, gens)));
    }
  }
  CHECK_THROWS_AS(eval_word("ax", sanov), ConfigError);
}

TEST_CASE("generator pairs: ring and identity validation, builtins") {
  CHECK(builtin_pair_names() == std::vector<std::string>{"parabolic-small", "sanov"});
  const GeneratorPair para = builtin_pair("parabolic-small");
  CHECK(para.a == Mat2(q(1), q(-1, 256), q(0), q(1)));
  CHECK(para.b == Mat2(q(1), q(0), q(1, 4096), q(1)));
  CHECK_FALSE(para.provenance.empty());
  CHECK_THROWS_AS(builtin_pair("unknown-pair"), ConfigError);

  CHECK_THROWS_AS(GeneratorPair(Mat2::identity(), para.b, ""), ConfigError);
  CHECK_THROWS_AS(GeneratorPair(para.a, Mat2::identity(), ""), ConfigError);
  // 1/3 is not dyadic, so the entry leaves Z[sqrt2, 1/2].
  CHECK_THROWS_AS(GeneratorPair(Mat2(q(1), q(1, 3), q(0), q(1)), para.b, ""), ConfigError);
  // sqrt2-coefficients with dyadic parts are inside the ring.
  const Mat2 gamma(QSqrt2::sqrt2(), q(0), q(0), QSqrt2(Rational(0), Rational(1, 2)));
  CHECK_NOTHROW(GeneratorPair(gamma, para.b, ""));
}

TEST_CASE("translating-word search: default pair lands at core 'aB'") {
  const GeneratorPair para = builtin_pair("parabolic-small");
  const WordSearchResult r =
      find_translating_words(para, rat(1, 195), ra(0), ra(1), 2);
  REQUIRE(r.found);
  CHECK(r.words.g_core == "aB");
  CHECK(r.words.h_core == "aB");
  CHECK(r.words.g_words[0] == "aaBA");
  CHECK(r.words.g_words[5] == "aaaaaaaBAAAAAA");
  CHECK(r.words.h_words[0] == "baBB");
  CHECK(r.words.h_words[2] == "bbbaBBBB");

  // Cores tried per side: a, A, b, B, aa, ab, aB.  Form kills a/A/aa on the
  // a-side and b/B/ab on the b-side; parabolic or elliptic evaluations kill
  // the remaining three before "aB" closes.
  CHECK(r.g_stats.cores_enumerated == 7);
  CHECK(r.g_stats.rejected_form == 3);
  CHECK(r.g_stats.rejected_not_hyperbolic == 3);
  CHECK(r.g_stats.rejected_dist == 0);
  CHECK(r.g_stats.rejected_pole == 0);
  CHECK(r.g_stats.rejected_not_flanking == 0);
  CHECK(r.g_stats.rejected_collision == 0);
  CHECK(r.h_stats.cores_enumerated == 7);
  CHECK(r.h_stats.rejected_form == 3);
  // "aa" survives the b-side form check but its conjugates sit 1/128 away.
  CHECK(r.h_stats.rejected_dist == 1);
  CHECK(r.h_stats.rejected_not_hyperbolic == 2);
  CHECK(r.h_stats.rejected_collision == 0);

  // Independent revalidation of all twelve words, plus pairwise distinctness.
  std::vector<Mat2> evals;
  for (const auto& side : {r.words.g_words, r.words.h_words}) {
    for (const std::string& w : side) {
      CHECK(word_reduce(w) == w);
      const Mat2 m = eval_word(w, para);
      CHECK(dist_to_identity(m) < q(1, 195));
      const Classification cls = classify(m);
      REQUIRE(cls.kind == MatClass::hyperbolic);
      REQUIRE(cls.fixed[0].has_value());
      REQUIRE(cls.fixed[1].has_value());
      CHECK(*cls.fixed[0] < ra(0));
      CHECK(*cls.fixed[1] > ra(1));
      if (!m.c().is_zero()) {
        CHECK(ra(0).sign_of_linear(m.c(), m.d()) == ra(1).sign_of_linear(m.c(), m.d()));
        CHECK(ra(0).sign_of_linear(m.c(), m.d()) != 0);
      }
      evals.push_back(m);
    }
  }
  for (size_t i = 0; i < evals.size(); ++i)
    for (size_t k = i + 1; k < evals.size(); ++k) CHECK(evals[i] != evals[k]);
}

TEST_CASE("translating-word search: exhaustion reports per-condition counts") {
  const GeneratorPair sanov = builtin_pair("sanov");
  const WordSearchResult r = find_translating_words(sanov, rat(100), ra(0), ra(1), 1);
  CHECK_FALSE(r.found);
  // Cores a (ends 'a') and A (starts 'A') die on form; b and B evaluate to
  // parabolic conjugates a b a^-1, a b^-1 a^-1 at exponent 1.
  CHECK(r.g_stats.cores_enumerated == 4);
  CHECK(r.g_stats.rejected_form == 2);
  CHECK(r.g_stats.rejected_not_hyperbolic == 2);
  CHECK(r.h_stats.cores_enumerated == 0);
  CHECK(r.note == "a-side search exhausted at core length 1");
  CHECK(r.g_stats.str().find("not-hyperbolic=2") != std::string::npos);

  // A zero bound is a legal search space (empty), exhausted immediately.
  const WordSearchResult zero =
      find_translating_words(sanov, rat(1, 195), ra(0), ra(1), 0);
  CHECK_FALSE(zero.found);
  CHECK(zero.g_stats.cores_enumerated == 0);
  CHECK(zero.note == "a-side search exhausted at core length 0");
  CHECK_THROWS_AS(find_translating_words(sanov, rat(1, 195), ra(0), ra(1), -1),
                  ConfigError);
  CHECK_THROWS_AS(find_translating_words(sanov, rat(0), ra(0), ra(1), 2), ConfigError);
  CHECK_THROWS_AS(find_translating_words(sanov, rat(1, 195), ra(1), ra(0), 2), ConfigError);
}

TEST_CASE("freeness certificates: exhaustive, shortest counterexamples") {
  const NoRelationResult free10 = certify_no_relation(builtin_pair("sanov"), 10);
  CHECK(free10.certified);
  CHECK(free10.words_checked == 118096);  // sum of 4*3^(l-1), l = 1..10

  const GeneratorPair para = builtin_pair("parabolic-small");
  const GeneratorPair same(para.a, para.a, "sabotage: b = a");
  const NoRelationResult hit2 = certify_no_relation(same, 10);
  CHECK_FALSE(hit2.certified);
  CHECK(hit2.counterexample == "aB");
  CHECK(hit2.words_checked == 7);  // a A b B aa ab aB

  const GeneratorPair square(para.a, compose(para.a, para.a), "sabotage: b = a^2");
  const NoRelationResult hit3 = certify_no_relation(square, 10);
  CHECK_FALSE(hit3.certified);
  CHECK(hit3.counterexample == "aaB");
  CHECK(hit3.words_checked == 19);  // 4 + 12 + aaa aab aaB

  // Every shipped pair is relation-free to length 6 (length 10 is covered by
  // the acceptance run).
  for (const std::string& name : builtin_pair_names())
    CHECK(certify_no_relation(builtin_pair(name), 6).certified);

  CHECK_THROWS_AS(certify_no_relation(para, 0), ConfigError);
}

TEST_CASE("near-identity scan: exact distances, deterministic order") {
  // Discrete control: nothing but the empty word comes near the identity.
  const std::vector<ScanEntry> discrete =
      near_identity_scan(builtin_pair("sanov"), rat(1, 10), 6);
  REQUIRE(discrete.size() == 1);
  CHECK(discrete[0].word.empty());
  CHECK(discrete[0].dist == q(0));

  // The default pair: b and B sit at 1/4096, bb/BB at 1/2048, then a full
  // crowd at 1/256; ties resolve by length then lexicographic order.
  const std::vector<ScanEntry> near =
      near_identity_scan(builtin_pair("parabolic-small"), rat(1, 195), 2);
  const std::vector<std::string> expected{"",   "b",  "B",  "bb", "BB",
                                          "a",  "A",  "ab", "aB", "Ab",
                                          "AB", "ba", "bA", "Ba", "BA"};
  REQUIRE(near.size() == expected.size());
  for (size_t i = 0; i < expected.size(); ++i) CHECK(near[i].word == expected[i]);
  CHECK(near[1].dist == q(1, 4096));
  CHECK(near[3].dist == q(1, 2048));
  CHECK(near[5].dist == q(1, 256));
  CHECK(near[14].dist == q(1, 256));

  // A commuting (hence non-free) pair: translations by 1 and 2.  Words with
  // a-count plus twice the b-count equal to zero evaluate to the identity
  // itself -- distance exactly 0 -- and nothing else comes close.
  const GeneratorPair commuting(Mat2(q(1), q(1), q(0), q(1)), Mat2(q(1), q(2), q(0), q(1)),
                                "commuting translations by 1 and 2");
  const std::vector<ScanEntry> rel = near_identity_scan(commuting, rat(1, 100), 3);
  const std::vector<std::string> idwords{"", "aaB", "aBa", "AAb", "AbA", "bAA", "Baa"};
  REQUIRE(rel.size() == idwords.size());
  for (size_t i = 0; i < idwords.size(); ++i) {
    CHECK(rel[i].word == idwords[i]);
    CHECK(rel[i].dist == q(0));
  }
}
