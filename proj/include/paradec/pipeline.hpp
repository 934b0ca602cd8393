/**
 * @file pipeline.hpp
 * @brief End-to-end driver: certify the derivative bound for (I, ε), search
 *        the δ-ball for twelve conjugate words, splice-lift their
 *        evaluations over I into a TranslatingSet, then run a
 *        marriage-verification campaign over exhaustive and seeded-random
 *        subsets with deterministic, recomputable reports.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "paradec/distortion.hpp"
#include "paradec/marriage.hpp"
#include "paradec/rational.hpp"
#include "paradec/word.hpp"

namespace paradec {

/// One exhaustive campaign stage: every subset u of ball(T, radius) with
/// |u| <= max_size (the empty subset included).
struct ExhaustiveStage {
  int radius = 1;
  std::size_t max_size = 2;
};

/// One random campaign stage: `count` subsets, each of 1..max_size elements,
/// each element a product of 1..word_len translators or their inverses.
struct RandomStage {
  std::size_t count = 100;
  std::size_t max_size = 8;
  int word_len = 3;
};

struct CampaignPlan {
  std::vector<ExhaustiveStage> exhaustive;
  std::vector<RandomStage> random;
  std::uint64_t seed = 0;
};

struct PipelineConfig {
  Rational i_lo = Rational(0);
  Rational i_hi = Rational(1);             ///< compact interval, rational ends
  Rational epsilon = Rational(1, 48);      ///< measure-distortion tolerance
  std::string pair_name = "parabolic-small";
  int max_core_len = 12;
  CampaignPlan plan;
};

/// Exact check that every piece of `elem` whose cell meets the interior of
/// [i_lo, i_hi] has matrix equal to eval_word(word, gens).
bool verify_agreement(const PiecewiseMap& elem, const std::string& word,
                      const GeneratorPair& gens, const Rational& i_lo,
                      const Rational& i_hi);

/// Runs distortion_delta, find_translating_words, and splice_lift, then
/// re-verifies everything the construction promised: agreement of each lift
/// with its word on I, evaluations strictly inside the δ-ball, and matrix
/// entries inside Z[sqrt2, 1/2].  Word-search exhaustion is a ConfigError
/// carrying the full per-condition statistics (the configured pair and core
/// bound cannot complete a build); internal re-verification failures are
/// MathErrors.
TranslatingSet build_translating_set(const PipelineConfig& cfg);

/// One campaign instance.  `timing` is a deterministic abstract work
/// counter (translate rows consumed plus certificate edges recomputed), so
/// reports are byte-identical across reruns and worker counts.
struct SubsetOutcome {
  std::size_t id = 0;        ///< serial within the campaign, merge order
  std::string stage;         ///< "exhaustive[i]" or "random[i]"
  std::size_t size = 0;      ///< |u|
  std::size_t lhs = 0;       ///< |(T ∪ {1})·u|
  std::size_t rhs = 0;       ///< 2|u|
  bool marriage_pass = false;
  bool matched = false;            ///< extract_matching found a certificate
  bool certificate_valid = false;  ///< independent validation agreed
  std::uint64_t seed = 0;          ///< campaign seed, recorded per record
  std::uint64_t timing = 0;
};

/// A negative finding, shipped with everything needed to re-check it.
struct CampaignFailure {
  std::size_t subset_id = 0;
  std::string what;
  FiniteSubset u;
  MarriageReport report;  ///< includes the full product table when marriage failed
};

struct CampaignReport {
  DistortionCert cert;
  WordSearchResult search;
  std::optional<TranslatingSet> tset;
  std::vector<SubsetOutcome> outcomes;
  std::vector<CampaignFailure> failures;
  // Aggregates; each equals the corresponding sum over `outcomes`.
  std::size_t instances = 0;
  std::size_t marriage_passes = 0;
  std::size_t matchings_found = 0;
  std::size_t certificates_valid = 0;
};

/// Builds the set, then checks every planned subset: check_2marriage,
/// extract_matching with u1 = u2 = u, and independent certificate
/// validation.  Negative findings go to `failures` and the campaign keeps
/// going; construction errors propagate.  Workers split instances with
/// per-worker caches and merge by id, so the report does not depend on
/// `jobs`.
CampaignReport run_campaign(const PipelineConfig& cfg, int jobs = 1);

/// The campaign stages alone, over an already constructed set: lays out the
/// planned instances, runs marriage, matching, and validation with
/// per-worker caches, and fills `rep.outcomes`, `rep.failures`, and the
/// aggregate counters.  run_campaign delegates here after building;
/// verification of deserialized sets reuses it directly.
void run_campaign_stages(const TranslatingSet& t, const CampaignPlan& plan,
                         int jobs, CampaignReport& rep);

}  // namespace paradec
