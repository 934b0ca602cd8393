/**
 * @file word.hpp
 * @brief Reduced words over {a, A, b, B} (A = a^-1, B = b^-1), evaluation
 *        into Mat2, the conjugate-word search for a translating set inside
 *        a distortion ball, and bounded-length freeness certificates.
 *
 * Words are plain strings over the four-letter alphabet; the ordering used
 * everywhere (enumeration, tie-breaks, reported lists) is length first, then
 * lexicographic with letters ranked a < A < b < B.  eval_word multiplies the
 * letter matrices in reading order, so "ab" evaluates to M_a * M_b.
 */
#pragma once

#include <array>
#include <string>
#include <vector>

#include "paradec/mat2.hpp"
#include "paradec/rational.hpp"
#include "paradec/real_algebraic.hpp"

namespace paradec {

/// Free reduction: cancels adjacent inverse pairs until none remain.
/// Whitespace is skipped; any other character outside {a, A, b, B} throws
/// ConfigError.  Idempotent.
std::string word_reduce(const std::string& raw);

/// Two matrices generating the candidate subgroup.  Entries must lie in
/// Z[sqrt2, 1/2] (dyadic denominators) and neither matrix may be the
/// identity; violations throw ConfigError.
struct GeneratorPair {
  Mat2 a, b;
  std::string provenance;

  GeneratorPair(Mat2 a_in, Mat2 b_in, std::string note);
};

/// Shipped candidate pairs by name; ConfigError for unknown names.
GeneratorPair builtin_pair(const std::string& name);
std::vector<std::string> builtin_pair_names();

/// Reading-order product of letter matrices; empty word gives the identity.
/// Letters as in word_reduce (whitespace skipped, junk rejected).
Mat2 eval_word(const std::string& word, const GeneratorPair& gens);

/// Per-condition rejection counts for the conjugate-word search; each
/// candidate core is charged to the first condition that kills it.
struct SearchStats {
  long cores_enumerated = 0;
  long rejected_form = 0;            ///< junction cancellation with the conjugator
  long rejected_dist = 0;            ///< evaluation leaves the delta-ball
  long rejected_pole = 0;            ///< pole of an evaluation meets I
  long rejected_not_hyperbolic = 0;  ///< evaluation not hyperbolic with finite fixed points
  long rejected_not_flanking = 0;    ///< fixed points fail to straddle I
  long rejected_collision = 0;       ///< evaluations collide (not pairwise distinct)

  std::string str() const;
};

struct TranslatingWords {
  std::array<std::string, 6> g_words;  ///< a^i w a^-i for i = 1..6
  std::array<std::string, 6> h_words;  ///< b^i w' b^-i for i = 1..6
  std::string g_core, h_core;          ///< w and w'
};

struct WordSearchResult {
  bool found = false;
  TranslatingWords words;  ///< meaningful only when found
  SearchStats g_stats, h_stats;
  std::string note;        ///< which side exhausted, when not found
};

/// Searches cores by length then lexicographic order, conjugation exponent
/// ascending, for twelve words a^i w a^-i, b^i w' b^-i (i = 1..6) whose
/// evaluations stay within delta of the identity, keep their pole outside
/// [i_lo, i_hi], and are hyperbolic with finite fixed points strictly
/// flanking the interval; the twelve evaluations must be pairwise distinct.
/// Exhaustion is a negative result with statistics, not an exception.
WordSearchResult find_translating_words(const GeneratorPair& gens,
                                        const Rational& delta,
                                        const RealAlgebraic& i_lo,
                                        const RealAlgebraic& i_hi,
                                        int max_core_len);

struct NoRelationResult {
  bool certified = false;      ///< no reduced word of length 1..L evaluates to 1
  std::string counterexample;  ///< shortest offender when not certified
  long words_checked = 0;
};

/// Exhaustive enumeration of reduced words of length 1..max_len, exact
/// identity test on each evaluation.  ConfigError when max_len < 1.
NoRelationResult certify_no_relation(const GeneratorPair& gens, int max_len);

struct ScanEntry {
  std::string word;
  QSqrt2 dist;
};

/// All reduced words of length <= max_len (including the empty word) whose
/// evaluation lies strictly within delta of the identity, sorted by exact
/// distance, ties by length then lexicographic order.
std::vector<ScanEntry> near_identity_scan(const GeneratorPair& gens,
                                          const Rational& delta, int max_len);

}  // namespace paradec
