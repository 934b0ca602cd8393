/**
 * @file marriage.hpp
 * @brief Exact verification of the Hall-style 2-marriage inequality
 *        |(T ∪ {1})·u| >= 2|u| over finite sets of piecewise projective
 *        maps, the two-subset union condition it feeds, and extraction plus
 *        independent validation of evenly colored 2-matching certificates.
 *
 * Throughout, S1 = {identity} ∪ T and S2 = T for a fixed twelve-element
 * translating set T, and the left translate s·g is the map "apply g, then
 * s" (pw_compose(g, s)).  All counting is by canonical keys, so every
 * reported cardinality is exact; failures are returned as data (reports and
 * witnesses), never as exceptions.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "paradec/piecewise.hpp"
#include "paradec/rational.hpp"
#include "paradec/word.hpp"

namespace paradec {

/// A finite set of pairwise-distinct canonical piecewise maps, ordered by
/// canonical key, with optional source words kept for report provenance.
/// The constructor canonicalizes: duplicates are dropped (the first-listed
/// copy keeps its word) and elements are sorted by key.
class FiniteSubset {
 public:
  FiniteSubset() = default;

  /// `words` is either empty (no provenance) or matches `elems` in length;
  /// a mismatch is a ConfigError.
  explicit FiniteSubset(std::vector<PiecewiseMap> elems,
                        std::vector<std::string> words = {});

  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  const std::vector<PiecewiseMap>& elements() const { return elems_; }
  /// Empty when no provenance was supplied, else parallel to elements().
  const std::vector<std::string>& source_words() const { return words_; }
  /// Cached canonical key of elements()[i].
  const std::string& key_of(std::size_t i) const { return keys_[i]; }
  bool contains_key(const std::string& key) const;

 private:
  std::vector<PiecewiseMap> elems_;
  std::vector<std::string> words_;
  std::vector<std::string> keys_;
};

/// All products of at most `radius` factors drawn from `gens` and their
/// inverses, deduplicated by canonical key.  radius 0 gives {identity}.
FiniteSubset ball(const std::vector<PiecewiseMap>& gens, int radius);

/// The twelve translating elements T (the identity that completes S1 stays
/// implicit), together with the construction metadata they were built from.
/// The constructor verifies the structural invariants and throws a
/// ConfigError listing every violation: exactly twelve elements and words,
/// elements pairwise distinct and none the identity, and each element equal
/// to its source word's evaluation on every piece whose cell meets the open
/// interval (i_lo, i_hi).
class TranslatingSet {
 public:
  TranslatingSet(std::vector<PiecewiseMap> elements,
                 std::vector<std::string> source_words, GeneratorPair gens,
                 Rational i_lo, Rational i_hi, Rational delta,
                 Rational epsilon);

  const std::vector<PiecewiseMap>& elements() const { return elems_; }
  const std::vector<std::string>& source_words() const { return words_; }
  const GeneratorPair& gens() const { return gens_; }
  const Rational& i_lo() const { return i_lo_; }
  const Rational& i_hi() const { return i_hi_; }
  const Rational& delta() const { return delta_; }
  const Rational& epsilon() const { return epsilon_; }

  /// |S1| + |S2| = 13 + 12: the number of pieces in the paradoxical
  /// decomposition the set induces.
  std::size_t piece_count() const { return 2 * elems_.size() + 1; }

 private:
  std::vector<PiecewiseMap> elems_;
  std::vector<std::string> words_;
  GeneratorPair gens_;
  Rational i_lo_, i_hi_, delta_, epsilon_;
};

/// Memo of left-translation products shared across many verification calls
/// on one set: row(g) holds s·g for every s in S1, indexed 0 (the identity)
/// through 12 (the elements of T in order), with canonical keys alongside.
/// Campaign workers own one cache each; results never depend on cache state.
class TranslateCache {
 public:
  struct Row {
    std::vector<PiecewiseMap> maps;  ///< s·g for s = 0..12
    std::vector<std::string> keys;   ///< canonical keys, parallel to maps
  };

  explicit TranslateCache(const TranslatingSet& t) : t_(&t) {}

  /// The full translate row of g, computed once per distinct element.
  const Row& row(const PiecewiseMap& g);
  const TranslatingSet& set() const { return *t_; }

  /// Number of memoized rows; callers bound memory by clearing between
  /// verification calls (never mid-call: returned references die with the
  /// rows).
  std::size_t size() const { return memo_.size(); }
  void clear() { memo_.clear(); }

 private:
  const TranslatingSet* t_;
  std::unordered_map<std::string, Row> memo_;
};

/// One row of the product table (T ∪ {1})·u: s_index indexes S1 as in
/// TranslateCache, u_index indexes the subset.
struct ProductWitness {
  std::size_t s_index;
  std::size_t u_index;
  PiecewiseMap product;
};

struct MarriageReport {
  std::size_t lhs = 0;  ///< |(T ∪ {1})·u|
  std::size_t rhs = 0;  ///< 2|u|
  bool pass = false;    ///< lhs >= rhs
  /// The full product table, emitted only on failure (a verified failure
  /// would falsify the construction, so the complete evidence ships).
  std::vector<ProductWitness> witness;
};

/// Counts the distinct left translates of u by S1 = T ∪ {1} exactly and
/// compares against 2|u|.
MarriageReport check_2marriage(const TranslatingSet& t, const FiniteSubset& u,
                               TranslateCache* cache = nullptr);

struct EgsReport {
  std::size_t lhs = 0;           ///< |S1·u1 ∪ S2·u2|
  std::size_t mid = 0;           ///< |(T·(u1 ∪ u2)) ∪ u1|
  std::size_t rhs = 0;           ///< |u1| + |u2|
  bool identity_holds = false;   ///< lhs == mid
  bool inequality_holds = false; ///< mid >= rhs
  bool pass = false;             ///< both links hold
};

/// Verifies the two-subset chain |S1·u1 ∪ S2·u2| = |(T·(u1∪u2)) ∪ u1|
/// >= |u1| + |u2| with exact counts for every link.
EgsReport check_egs_condition(const TranslatingSet& t, const FiniteSubset& u1,
                              const FiniteSubset& u2,
                              TranslateCache* cache = nullptr);

/// One colored edge of a 2-matching: `target` claims to be the left
/// translate of `left` by `translator`, with the translator drawn from S1
/// when color is 1 and from S2 when color is 2.
struct MatchingEdge {
  int color;
  PiecewiseMap left;
  PiecewiseMap translator;
  PiecewiseMap target;
};

/// An evenly colored 2-matching: one color-1 edge per element of u1, one
/// color-2 edge per element of u2, all targets pairwise distinct.
struct MatchingCertificate {
  FiniteSubset u1, u2;
  std::vector<MatchingEdge> edges;
};

/// Result of extract_matching: exactly one of `certificate` (every left
/// vertex matched) or the Hall-violating left set is populated.  The
/// violator is the set of left vertices reachable from the unmatched ones
/// by alternating paths; its recomputed neighborhood is strictly smaller.
struct MatchingOutcome {
  bool matched = false;
  std::optional<MatchingCertificate> certificate;
  FiniteSubset violating_u1, violating_u2;
  std::size_t violator_size = 0;
  std::size_t neighborhood_size = 0;
};

/// Builds the bipartite graph with left vertices u1 ⊔ u2 (colored 1 and 2),
/// right vertices the translates, and edges g -> s·g for s in the color's
/// translating set, then runs Hopcroft-Karp.  Deterministic: vertices and
/// edges are visited in subset and S order.
MatchingOutcome extract_matching(const TranslatingSet& t,
                                 const FiniteSubset& u1,
                                 const FiniteSubset& u2,
                                 TranslateCache* cache = nullptr);

/// Independent audit of a certificate: recomputes every edge product from
/// scratch, checks the translator's membership in its color set, coverage
/// of every left vertex exactly once, and pairwise distinctness of all
/// targets.  Every violated clause is reported.
ValidationReport validate_certificate(const TranslatingSet& t,
                                      const MatchingCertificate& cert);

}  // namespace paradec
