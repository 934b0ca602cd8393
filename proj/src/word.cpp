/**
 * @file word.cpp
 * @brief Word reduction, evaluation, translating-word search, freeness
 *        certificates, near-identity scans.
 */
#include "paradec/word.hpp"

#include <algorithm>
#include <cstddef>
#include <utility>

#include "paradec/errors.hpp"

namespace paradec {

namespace {

constexpr char kAlphabet[4] = {'a', 'A', 'b', 'B'};

int letter_rank(char c) {
  switch (c) {
    case 'a': return 0;
    case 'A': return 1;
    case 'b': return 2;
    case 'B': return 3;
    default: throw ConfigError(std::string("invalid word letter '") + c + "'");
  }
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

/// Ranks r and r^1 are mutually inverse (a<->A, b<->B).
bool cancels(char x, char y) { return (letter_rank(x) ^ 1) == letter_rank(y); }

/// Literal matrix product x * y (compose(g, h) carries "apply g then h",
/// i.e. the product M_h * M_g, so the arguments swap).
Mat2 mul(const Mat2& x, const Mat2& y) { return compose(y, x); }

bool is_dyadic(const Rational& q) {
  const Integer den = q.get_den();
  return mpz_popcount(den.get_mpz_t()) == 1;
}

bool in_dyadic_ring(const QSqrt2& v) { return is_dyadic(v.r()) && is_dyadic(v.s()); }

std::array<Mat2, 4> letter_matrices(const GeneratorPair& gens) {
  return {gens.a, invert(gens.a), gens.b, invert(gens.b)};
}

/// Depth-first enumeration of reduced words of exact length `len` in
/// lexicographic order (a < A < b < B), carrying the running evaluation.
/// The visitor returns false to stop the whole enumeration.
template <typename Visitor>
bool enumerate_reduced(const std::array<Mat2, 4>& mats, int len, std::string& word,
                       const Mat2& acc, Visitor&& visit) {
  if (static_cast<int>(word.size()) == len) return visit(word, acc);
  for (int r = 0; r < 4; ++r) {
    if (!word.empty() && (letter_rank(word.back()) ^ 1) == r) continue;
    word.push_back(kAlphabet[r]);
    const bool go = enumerate_reduced(mats, len, word, mul(acc, mats[static_cast<size_t>(r)]),
                                      visit);
    word.pop_back();
    if (!go) return false;
  }
  return true;
}

bool pole_outside(const Mat2& g, const RealAlgebraic& lo, const RealAlgebraic& hi) {
  if (g.c().is_zero()) return true;
  const int s_lo = lo.sign_of_linear(g.c(), g.d());
  const int s_hi = hi.sign_of_linear(g.c(), g.d());
  return s_lo != 0 && s_lo == s_hi;
}

struct ConjugateCheck {
  bool ok = false;
  std::vector<Mat2> evals;  // the six conjugated evaluations when ok
};

/// Checks a^i w a^-i (or the b-side) for i = 1..6 against the ball, pole,
/// hyperbolicity and flanking conditions; charges the core's rejection to
/// the first failing condition.
ConjugateCheck check_core(const Mat2& core_eval, const Mat2& conj, const Mat2& conj_inv,
                          const QSqrt2& delta, const RealAlgebraic& i_lo,
                          const RealAlgebraic& i_hi, SearchStats& stats) {
  ConjugateCheck out;
  Mat2 x = core_eval;
  for (int i = 1; i <= 6; ++i) {
    x = mul(mul(conj, x), conj_inv);
    if (!(dist_to_identity(x) < delta)) {
      ++stats.rejected_dist;
      return out;
    }
    if (!pole_outside(x, i_lo, i_hi)) {
      ++stats.rejected_pole;
      return out;
    }
    if (x.is_identity()) {
      ++stats.rejected_not_hyperbolic;
      return out;
    }
    const Classification cls = classify(x);
    if (cls.kind != MatClass::hyperbolic || !cls.fixed[0] || !cls.fixed[1]) {
      ++stats.rejected_not_hyperbolic;
      return out;
    }
    if (!(*cls.fixed[0] < i_lo) || !(*cls.fixed[1] > i_hi)) {
      ++stats.rejected_not_flanking;
      return out;
    }
    out.evals.push_back(x);
  }
  out.ok = true;
  return out;
}

bool all_distinct(const std::vector<Mat2>& xs, const std::vector<Mat2>& against) {
  for (size_t i = 0; i < xs.size(); ++i) {
    for (size_t k = i + 1; k < xs.size(); ++k)
      if (xs[i] == xs[k]) return false;
    for (const Mat2& g : against)
      if (xs[i] == g) return false;
  }
  return true;
}

struct SideResult {
  bool found = false;
  std::string core;
  std::vector<Mat2> evals;
};

/// One side of the search: cores by length then lex order; `front_ban` and
/// `back_ban` are the letters that would cancel into the conjugator.
SideResult search_side(const GeneratorPair& gens, char front_ban, char back_ban,
                       const Mat2& conj, const QSqrt2& delta, const RealAlgebraic& i_lo,
                       const RealAlgebraic& i_hi, int max_core_len, SearchStats& stats,
                       const std::vector<Mat2>& against) {
  const std::array<Mat2, 4> mats = letter_matrices(gens);
  const Mat2 conj_inv = invert(conj);
  SideResult result;
  for (int len = 1; len <= max_core_len && !result.found; ++len) {
    std::string word;
    enumerate_reduced(mats, len, word, Mat2::identity(),
                      [&](const std::string& w, const Mat2& eval) {
                        ++stats.cores_enumerated;
                        if (w.front() == front_ban || w.back() == back_ban) {
                          ++stats.rejected_form;
                          return true;
                        }
                        ConjugateCheck chk =
                            check_core(eval, conj, conj_inv, delta, i_lo, i_hi, stats);
                        if (!chk.ok) return true;
                        if (!all_distinct(chk.evals, against)) {
                          ++stats.rejected_collision;
                          return true;
                        }
                        result.found = true;
                        result.core = w;
                        result.evals = std::move(chk.evals);
                        return false;
                      });
  }
  return result;
}

}  // namespace

std::string word_reduce(const std::string& raw) {
  std::string out;
  for (const char c : raw) {
    if (is_space(c)) continue;
    letter_rank(c);  // validates
    if (!out.empty() && cancels(out.back(), c)) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return out;
}

GeneratorPair::GeneratorPair(Mat2 a_in, Mat2 b_in, std::string note)
    : a(std::move(a_in)), b(std::move(b_in)), provenance(std::move(note)) {
  for (const Mat2* m : {&a, &b})
    for (const QSqrt2& e : {m->a(), m->b(), m->c(), m->d()})
      if (!in_dyadic_ring(e))
        throw ConfigError("generator entry leaves Z[sqrt2, 1/2]: " + e.str());
  if (a.is_identity() || b.is_identity())
    throw ConfigError("generators must not be the identity");
}

GeneratorPair builtin_pair(const std::string& name) {
  const auto q = [](long n, long d) {
    Rational r(n, d);
    r.canonicalize();
    return QSqrt2(r);
  };
  if (name == "parabolic-small") {
    return GeneratorPair(
        Mat2(q(1, 1), q(-1, 256), q(0, 1), q(1, 1)),
        Mat2(q(1, 1), q(0, 1), q(1, 4096), q(1, 1)),
        "upper and lower parabolic with tiny dyadic offsets -1/256 and 1/4096; "
        "mixed two-letter words land within 1/256 of the identity");
  }
  if (name == "sanov") {
    return GeneratorPair(Mat2(q(1, 1), q(2, 1), q(0, 1), q(1, 1)),
                         Mat2(q(1, 1), q(0, 1), q(2, 1), q(1, 1)),
                         "classical ping-pong pair; free and discrete, serves as "
                         "a control for the near-identity scan");
  }
  throw ConfigError("unknown generator pair: '" + name + "'");
}

std::vector<std::string> builtin_pair_names() { return {"parabolic-small", "sanov"}; }

Mat2 eval_word(const std::string& word, const GeneratorPair& gens) {
  const std::array<Mat2, 4> mats = letter_matrices(gens);
  Mat2 acc = Mat2::identity();
  for (const char c : word) {
    if (is_space(c)) continue;
    acc = mul(acc, mats[static_cast<size_t>(letter_rank(c))]);
  }
  return acc;
}

std::string SearchStats::str() const {
  return "cores=" + std::to_string(cores_enumerated) +
         " form=" + std::to_string(rejected_form) +
         " dist=" + std::to_string(rejected_dist) +
         " pole=" + std::to_string(rejected_pole) +
         " not-hyperbolic=" + std::to_string(rejected_not_hyperbolic) +
         " not-flanking=" + std::to_string(rejected_not_flanking) +
         " collision=" + std::to_string(rejected_collision);
}

WordSearchResult find_translating_words(const GeneratorPair& gens, const Rational& delta,
                                        const RealAlgebraic& i_lo, const RealAlgebraic& i_hi,
                                        int max_core_len) {
  if (max_core_len < 0) throw ConfigError("maxCoreLen must be nonnegative");
  if (!(i_lo < i_hi)) throw ConfigError("word-search interval is empty");
  if (!(delta > 0)) throw ConfigError("delta must be positive");

  WordSearchResult out;
  const QSqrt2 ball(delta);

  const SideResult g_side = search_side(gens, 'A', 'a', gens.a, ball, i_lo, i_hi,
                                        max_core_len, out.g_stats, {});
  if (!g_side.found) {
    out.note = "a-side search exhausted at core length " + std::to_string(max_core_len);
    return out;
  }
  const SideResult h_side = search_side(gens, 'B', 'b', gens.b, ball, i_lo, i_hi,
                                        max_core_len, out.h_stats, g_side.evals);
  if (!h_side.found) {
    out.note = "b-side search exhausted at core length " + std::to_string(max_core_len) +
               " (a-side core was '" + g_side.core + "')";
    return out;
  }

  out.found = true;
  out.words.g_core = g_side.core;
  out.words.h_core = h_side.core;
  for (int i = 1; i <= 6; ++i) {
    const auto k = static_cast<size_t>(i - 1);
    out.words.g_words[k] = std::string(static_cast<size_t>(i), 'a') + g_side.core +
                           std::string(static_cast<size_t>(i), 'A');
    out.words.h_words[k] = std::string(static_cast<size_t>(i), 'b') + h_side.core +
                           std::string(static_cast<size_t>(i), 'B');
  }
  return out;
}

NoRelationResult certify_no_relation(const GeneratorPair& gens, int max_len) {
  if (max_len < 1) throw ConfigError("relation search length must be at least 1");
  const std::array<Mat2, 4> mats = letter_matrices(gens);
  NoRelationResult out;
  for (int len = 1; len <= max_len; ++len) {
    std::string word;
    const bool completed =
        enumerate_reduced(mats, len, word, Mat2::identity(),
                          [&](const std::string& w, const Mat2& eval) {
                            ++out.words_checked;
                            if (eval.is_identity()) {
                              out.counterexample = w;
                              return false;
                            }
                            return true;
                          });
    if (!completed) return out;  // counterexample found, shortest by order
  }
  out.certified = true;
  return out;
}

std::vector<ScanEntry> near_identity_scan(const GeneratorPair& gens, const Rational& delta,
                                          int max_len) {
  if (max_len < 0) throw ConfigError("scan length must be nonnegative");
  const std::array<Mat2, 4> mats = letter_matrices(gens);
  const QSqrt2 ball(delta);
  std::vector<ScanEntry> out;
  if (QSqrt2(Rational(0)) < ball) out.push_back({"", QSqrt2(Rational(0))});
  for (int len = 1; len <= max_len; ++len) {
    std::string word;
    enumerate_reduced(mats, len, word, Mat2::identity(),
                      [&](const std::string& w, const Mat2& eval) {
                        const QSqrt2 d = dist_to_identity(eval);
                        if (d < ball) out.push_back({w, d});
                        return true;
                      });
  }
  // Enumeration already runs in (length, lex) order; a stable sort by exact
  // distance keeps that order within ties.
  std::stable_sort(out.begin(), out.end(), [](const ScanEntry& x, const ScanEntry& y) {
    return x.dist < y.dist;
  });
  return out;
}

}  // namespace paradec
