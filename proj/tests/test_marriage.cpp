/**
 * @file test_marriage.cpp
 * @brief Finite subsets and balls, translating-set invariants, exact
 *        2-marriage and two-subset union counting, matching extraction with
 *        Hall-violator fallback, and independent certificate validation.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "paradec/errors.hpp"
#include "paradec/marriage.hpp"
#include "paradec/piecewise.hpp"
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

/// One-piece map of an affine matrix (fixes oo, so a legal full-line piece).
PiecewiseMap flat(const Mat2& m) { return pw_normalize(PiecewiseMap({}, {m})); }

PiecewiseMap flat_translation(long k) {
  return flat(Mat2(q(1), q(k), q(0), q(1)));
}

/// Degenerate but structurally valid set: the translations by 1..12, whose
/// left translates collapse heavily.  Exercises failure reporting and the
/// Hall-violator path, which a genuine translating set never reaches.
/// Source words are powers of a over the pair a = x+1, b = 2x.
TranslatingSet stacked_translations() {
  const GeneratorPair gens(Mat2(q(1), q(1), q(0), q(1)),
                           Mat2(QSqrt2(rat(0), rat(1)), q(0), q(0),
                                QSqrt2(rat(0), rat(1, 2))),
                           "affine test pair");
  std::vector<PiecewiseMap> elems;
  std::vector<std::string> words;
  for (long k = 1; k <= 12; ++k) {
    elems.push_back(flat_translation(k));
    words.push_back(std::string(static_cast<std::size_t>(k), 'a'));
  }
  return TranslatingSet(elems, words, gens, rat(0), rat(1), rat(1, 195),
                        rat(1, 48));
}

/// The genuine article: twelve conjugate words found inside the 1/195-ball
/// of the small-offset parabolic pair, spliced over [0, 1].
const TranslatingSet& spliced_set() {
  static const TranslatingSet t = [] {
    const GeneratorPair gens = builtin_pair("parabolic-small");
    const Rational delta = rat(1, 195);
    const WordSearchResult r = find_translating_words(
        gens, delta, RealAlgebraic(0), RealAlgebraic(1), 12);
    REQUIRE(r.found);
    std::vector<PiecewiseMap> elems;
    std::vector<std::string> words;
    for (const auto& w : r.words.g_words) words.push_back(w);
    for (const auto& w : r.words.h_words) words.push_back(w);
    for (const auto& w : words)
      elems.push_back(
          splice_lift(eval_word(w, gens), RealAlgebraic(0), RealAlgebraic(1)));
    return TranslatingSet(elems, words, gens, rat(0), rat(1), delta,
                          rat(1, 48));
  }();
  return t;
}

FiniteSubset singleton_identity() {
  return FiniteSubset({PiecewiseMap::identity()});
}

}  // namespace

TEST_CASE("finite subsets canonicalize: sort, dedup, word provenance") {
  const PiecewiseMap t1 = flat_translation(1), t2 = flat_translation(2);
  const FiniteSubset u({t1, t2, t1}, {"x", "y", "z"});
  CHECK(u.size() == 2);
  CHECK(u.contains_key(t1.key()));
  CHECK(u.contains_key(t2.key()));
  CHECK_FALSE(u.contains_key(flat_translation(3).key()));
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u.key_of(i) == t1.key()) CHECK(u.source_words()[i] == "x");  // first copy won
    if (u.key_of(i) == t2.key()) CHECK(u.source_words()[i] == "y");
  }
  CHECK(FiniteSubset().empty());
  CHECK(FiniteSubset({t1}).source_words().empty());
  CHECK_THROWS_AS(FiniteSubset({t1, t2}, {"x"}), ConfigError);
}

TEST_CASE("balls: radius 0, translation ball of radius 2, monotonicity") {
  const FiniteSubset b0 = ball({}, 0);
  REQUIRE(b0.size() == 1);
  CHECK(b0.elements()[0].is_identity());
  CHECK_THROWS_AS(ball({}, -1), ConfigError);

  const FiniteSubset b2 = ball({flat_translation(1)}, 2);
  REQUIRE(b2.size() == 5);
  for (long k = -2; k <= 2; ++k) CHECK(b2.contains_key(flat_translation(k).key()));

  const auto& t = spliced_set();
  const std::vector<PiecewiseMap> gens{t.elements()[0], t.elements()[6]};
  FiniteSubset prev = ball(gens, 0);
  for (int r = 1; r <= 2; ++r) {
    const FiniteSubset next = ball(gens, r);
    CHECK(next.size() > prev.size());
    for (std::size_t i = 0; i < prev.size(); ++i)
      CHECK(next.contains_key(prev.key_of(i)));
    prev = next;
  }
}

TEST_CASE("translating-set invariants: sizes, distinctness, word agreement") {
  const auto& t = spliced_set();
  CHECK(t.elements().size() == 12);
  CHECK(t.piece_count() == 25);
  CHECK(t.source_words()[0] == "aaBA");  // a (aB) a^-1, freely reduced

  const GeneratorPair gens = t.gens();
  std::vector<PiecewiseMap> elems = t.elements();
  std::vector<std::string> words = t.source_words();

  SUBCASE("wrong cardinality") {
    elems.pop_back();
    words.pop_back();
    try {
      TranslatingSet(elems, words, gens, rat(0), rat(1), rat(1, 195), rat(1, 48));
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("expected 12 elements, got 11") !=
            std::string::npos);
    }
  }
  SUBCASE("duplicate and identity elements, reported together") {
    elems[3] = elems[2];
    words[3] = words[2];
    elems[7] = PiecewiseMap::identity();
    words[7] = "aA";  // evaluates to the identity, so agreement still holds
    try {
      TranslatingSet(elems, words, gens, rat(0), rat(1), rat(1, 195), rat(1, 48));
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("elements 2 and 3 are equal") != std::string::npos);
      CHECK(msg.find("element 7 is the identity") != std::string::npos);
    }
  }
  SUBCASE("source word disagreement on the interval") {
    words[5] = words[4];
    try {
      TranslatingSet(elems, words, gens, rat(0), rat(1), rat(1, 195), rat(1, 48));
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find(
                "element 5 disagrees with its source word") != std::string::npos);
    }
  }
  SUBCASE("metadata sanity") {
    CHECK_THROWS_AS(TranslatingSet(elems, words, gens, rat(1), rat(0),
                                   rat(1, 195), rat(1, 48)),
                    ConfigError);
    CHECK_THROWS_AS(TranslatingSet(elems, words, gens, rat(0), rat(1),
                                   rat(1, 195), rat(1)),
                    ConfigError);
    CHECK_THROWS_AS(TranslatingSet(elems, words, gens, rat(0), rat(1), rat(0),
                                   rat(1, 48)),
                    ConfigError);
  }
}

TEST_CASE("2-marriage: empty set, identity singleton, small balls all pass") {
  const auto& t = spliced_set();
  TranslateCache cache(t);

  const MarriageReport empty = check_2marriage(t, FiniteSubset(), &cache);
  CHECK(empty.lhs == 0);
  CHECK(empty.rhs == 0);
  CHECK(empty.pass);
  CHECK(empty.witness.empty());

  // |S1 · {1}| = |S1| = 13 re-verifies the distinctness invariants.
  const MarriageReport one = check_2marriage(t, singleton_identity(), &cache);
  CHECK(one.lhs == 13);
  CHECK(one.rhs == 2);
  CHECK(one.pass);

  const FiniteSubset u = ball(t.elements(), 1);
  CHECK(u.size() == 25);  // identity, the twelve elements, twelve inverses
  const MarriageReport big = check_2marriage(t, u, &cache);
  CHECK(big.rhs == 50);
  CHECK(big.pass);
  CHECK(big.witness.empty());

  // Same answer straight off the cold path.
  const MarriageReport cold = check_2marriage(t, u);
  CHECK(cold.lhs == big.lhs);
  CHECK(cold.pass);
}

TEST_CASE("2-marriage failure emits the full product table") {
  const TranslatingSet t = stacked_translations();
  const FiniteSubset u = ball({flat_translation(1)}, 13);
  REQUIRE(u.size() == 27);  // translations by -13 .. 13

  const MarriageReport r = check_2marriage(t, u);
  CHECK(r.lhs == 39);  // translations by -13 .. 25
  CHECK(r.rhs == 54);
  CHECK_FALSE(r.pass);
  REQUIRE(r.witness.size() == 13 * 27);
  // Spot-check one witness row: s_index 12 is translation by 12.
  for (const ProductWitness& w : r.witness)
    if (w.s_index == 12 && u.key_of(w.u_index) == flat_translation(13).key())
      CHECK(pw_equal(w.product, flat_translation(25)));

  CHECK_THROWS_AS(
      [&] {
        TranslateCache wrong(t);
        return check_2marriage(spliced_set(), u, &wrong);
      }(),
      ConfigError);
}

TEST_CASE("2-marriage monotone along sampled chains") {
  const auto& t = spliced_set();
  TranslateCache cache(t);
  const FiniteSubset pool =
      ball({t.elements()[0], t.elements()[6], t.elements()[1]}, 1);
  REQUIRE(pool.size() >= 7);

  Rng rng(42);
  std::vector<std::size_t> order(pool.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[rng.index(i)]);

  std::vector<PiecewiseMap> grow;
  for (std::size_t i = 0; i < order.size(); ++i) {
    grow.push_back(pool.elements()[order[i]]);
    const MarriageReport r = check_2marriage(t, FiniteSubset(grow), &cache);
    CHECK(r.pass);
    CHECK(r.lhs >= 2 * grow.size());
  }
}

TEST_CASE("union condition: trivial subsets, cross-check, degenerate failure") {
  const auto& t = spliced_set();
  TranslateCache cache(t);

  const EgsReport zero = check_egs_condition(t, FiniteSubset(), FiniteSubset(), &cache);
  CHECK(zero.lhs == 0);
  CHECK(zero.mid == 0);
  CHECK(zero.rhs == 0);
  CHECK(zero.pass);

  const EgsReport one = check_egs_condition(t, singleton_identity(), FiniteSubset(), &cache);
  CHECK(one.lhs == 13);
  CHECK(one.mid == 13);
  CHECK(one.rhs == 1);
  CHECK(one.pass);

  // With u1 = u2 = u the chain reduces to the 2-marriage report.
  const FiniteSubset u = ball({t.elements()[0], t.elements()[6]}, 1);
  const EgsReport both = check_egs_condition(t, u, u, &cache);
  const MarriageReport m = check_2marriage(t, u, &cache);
  CHECK(both.lhs == m.lhs);
  CHECK(both.mid == m.lhs);
  CHECK(both.rhs == m.rhs);
  CHECK(both.identity_holds);
  CHECK(both.pass == m.pass);
  CHECK(both.pass);

  // The stacked set satisfies the set identity (it always holds) but not
  // the count inequality.
  const TranslatingSet stack = stacked_translations();
  const FiniteSubset v = ball({flat_translation(1)}, 13);
  const EgsReport bad = check_egs_condition(stack, v, v);
  CHECK(bad.lhs == 39);
  CHECK(bad.mid == 39);
  CHECK(bad.rhs == 54);
  CHECK(bad.identity_holds);
  CHECK_FALSE(bad.inequality_holds);
  CHECK_FALSE(bad.pass);
}

TEST_CASE("matching extraction: empty, identity pair, and a radius-1 ball") {
  const auto& t = spliced_set();
  TranslateCache cache(t);

  const MatchingOutcome empty = extract_matching(t, FiniteSubset(), FiniteSubset(), &cache);
  CHECK(empty.matched);
  REQUIRE(empty.certificate.has_value());
  CHECK(empty.certificate->edges.empty());
  CHECK(validate_certificate(t, *empty.certificate).ok());

  // u1 = u2 = {1}: color 1 matches 1 ↦ 1 via the identity, color 2 must
  // reach for the first translating element.
  const FiniteSubset ones = singleton_identity();
  const MatchingOutcome pair = extract_matching(t, ones, ones, &cache);
  REQUIRE(pair.matched);
  const MatchingCertificate& cert = *pair.certificate;
  REQUIRE(cert.edges.size() == 2);
  CHECK(cert.edges[0].color == 1);
  CHECK(cert.edges[0].translator.is_identity());
  CHECK(cert.edges[0].target.is_identity());
  CHECK(cert.edges[1].color == 2);
  CHECK(pw_equal(cert.edges[1].translator, t.elements()[0]));
  CHECK(pw_equal(cert.edges[1].target, t.elements()[0]));
  CHECK(validate_certificate(t, cert).ok());

  const FiniteSubset u = ball({t.elements()[0], t.elements()[6]}, 1);
  const MatchingOutcome ballout = extract_matching(t, u, u, &cache);
  REQUIRE(ballout.matched);
  CHECK(ballout.certificate->edges.size() == 2 * u.size());
  CHECK(validate_certificate(t, *ballout.certificate).ok());
  CHECK(check_egs_condition(t, u, u, &cache).pass);  // certificate implies it
}

TEST_CASE("matching extraction surfaces a genuine Hall violator") {
  const TranslatingSet t = stacked_translations();
  TranslateCache cache(t);
  const FiniteSubset u = ball({flat_translation(1)}, 13);

  const MatchingOutcome out = extract_matching(t, u, u, &cache);
  CHECK_FALSE(out.matched);
  CHECK_FALSE(out.certificate.has_value());
  REQUIRE(out.violator_size > 0);
  CHECK(out.violator_size ==
        out.violating_u1.size() + out.violating_u2.size());
  CHECK(out.neighborhood_size < out.violator_size);

  // Recount the violator's neighborhood from scratch: N(V) really is small.
  std::set<std::string> nbhd;
  for (std::size_t i = 0; i < out.violating_u1.size(); ++i) {
    const auto& row = cache.row(out.violating_u1.elements()[i]);
    nbhd.insert(row.keys.begin(), row.keys.end());
  }
  for (std::size_t i = 0; i < out.violating_u2.size(); ++i) {
    const auto& row = cache.row(out.violating_u2.elements()[i]);
    nbhd.insert(row.keys.begin() + 1, row.keys.end());
  }
  CHECK(nbhd.size() == out.neighborhood_size);
  CHECK(nbhd.size() < out.violator_size);
}

TEST_CASE("certificate validation rejects every corruption") {
  const auto& t = spliced_set();
  const FiniteSubset ones = singleton_identity();
  const MatchingCertificate good = *extract_matching(t, ones, ones).certificate;
  REQUIRE(validate_certificate(t, good).ok());

  SUBCASE("duplicated target") {
    MatchingCertificate bad = good;
    bad.edges[1] = bad.edges[0];
    bad.edges[1].color = 2;
    const ValidationReport rep = validate_certificate(t, bad);
    CHECK_FALSE(rep.ok());
    bool saw_collision = false, saw_membership = false;
    for (const auto& v : rep.violations) {
      if (v.find("collide") != std::string::npos) saw_collision = true;
      if (v.find("not a member of S2") != std::string::npos) saw_membership = true;
    }
    CHECK(saw_collision);
    CHECK(saw_membership);  // the copied identity translator is S1-only
  }
  SUBCASE("translator outside its color set") {
    MatchingCertificate bad = good;
    bad.edges[1].translator = flat_translation(1);
    bad.edges[1].target = pw_compose(bad.edges[1].left, bad.edges[1].translator);
    const ValidationReport rep = validate_certificate(t, bad);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].find("translator is not a member of S2") !=
          std::string::npos);
  }
  SUBCASE("target differs from the recomputed product") {
    MatchingCertificate bad = good;
    bad.edges[1].target = t.elements()[3];
    const ValidationReport rep = validate_certificate(t, bad);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].find("differs from the recomputed product") !=
          std::string::npos);
  }
  SUBCASE("missing edge breaks coverage") {
    MatchingCertificate bad = good;
    bad.edges.pop_back();
    const ValidationReport rep = validate_certificate(t, bad);
    CHECK_FALSE(rep.ok());
    bool saw_count = false, saw_cover = false;
    for (const auto& v : rep.violations) {
      if (v.find("expected 2 edges, got 1") != std::string::npos) saw_count = true;
      if (v.find("element 0 of u2 is covered by 0") != std::string::npos)
        saw_cover = true;
    }
    CHECK(saw_count);
    CHECK(saw_cover);
  }
  SUBCASE("foreign left element and bad color") {
    MatchingCertificate bad = good;
    bad.edges[0].left = flat_translation(1);
    const ValidationReport rep = validate_certificate(t, bad);
    CHECK_FALSE(rep.ok());
    bool saw = false;
    for (const auto& v : rep.violations)
      if (v.find("left element is not a member of u1") != std::string::npos)
        saw = true;
    CHECK(saw);

    MatchingCertificate tinted = good;
    tinted.edges[0].color = 3;
    const ValidationReport rep2 = validate_certificate(t, tinted);
    CHECK_FALSE(rep2.ok());
    CHECK(rep2.violations[0].find("color is neither 1 nor 2") != std::string::npos);
  }
}
