/**
 * @file pipeline.cpp
 * @brief Construction driver and marriage campaign: certificate, word
 *        search, splice lifting, re-verification, and deterministic
 *        parallel subset checking.
 */
#include "paradec/pipeline.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <thread>
#include <utility>

#include "paradec/errors.hpp"
#include "paradec/rng.hpp"

namespace paradec {

namespace {

/// distortion -> search -> lift -> re-verify, with the intermediate
/// artifacts exposed for campaign reports.
TranslatingSet build_stages(const PipelineConfig& cfg, DistortionCert* cert_out,
                            WordSearchResult* search_out) {
  const DistortionCert cert = distortion_delta(cfg.i_lo, cfg.i_hi, cfg.epsilon);
  if (cert_out != nullptr) *cert_out = cert;

  const GeneratorPair gens = builtin_pair(cfg.pair_name);
  const WordSearchResult search =
      find_translating_words(gens, cert.delta, RealAlgebraic(cfg.i_lo),
                             RealAlgebraic(cfg.i_hi), cfg.max_core_len);
  if (search_out != nullptr) *search_out = search;
  if (!search.found) {
    std::ostringstream os;
    os << "translating-word search exhausted for pair '" << cfg.pair_name
       << "' at core length <= " << cfg.max_core_len
       << ": g-side " << search.g_stats.str() << "; h-side "
       << search.h_stats.str();
    if (!search.note.empty()) os << "; " << search.note;
    throw ConfigError(os.str());
  }

  std::vector<std::string> words;
  words.reserve(12);
  for (const auto& w : search.words.g_words) words.push_back(w);
  for (const auto& w : search.words.h_words) words.push_back(w);

  const RealAlgebraic lo(cfg.i_lo), hi(cfg.i_hi);
  const QSqrt2 delta(cert.delta);
  std::vector<PiecewiseMap> elems;
  elems.reserve(12);
  for (const auto& w : words) {
    const Mat2 m = eval_word(w, gens);
    if (!(dist_to_identity(m) < delta))
      throw MathError("word '" + w +
                      "' left the delta-ball despite search guarantees "
                      "(arithmetic bug)");
    PiecewiseMap elem = splice_lift(m, lo, hi);
    if (!verify_agreement(elem, w, gens, cfg.i_lo, cfg.i_hi))
      throw MathError("lift of word '" + w +
                      "' disagrees with its evaluation on the interval "
                      "(arithmetic bug)");
    const ValidationReport ring = pw_validate(elem, Ring::zsqrt2_with_halves);
    if (!ring.ok())
      throw MathError("lift of word '" + w +
                      "' has entries outside Z[sqrt2, 1/2]: " +
                      ring.violations.front());
    elems.push_back(std::move(elem));
  }
  return TranslatingSet(std::move(elems), std::move(words), gens, cfg.i_lo,
                        cfg.i_hi, cert.delta, cfg.epsilon);
}

/// A campaign instance before materialization: either indices into a
/// stage's ball pool, or signed translator factors (negative = inverse of
/// ~index) for randomly sampled elements.
struct Instance {
  std::string stage;
  int pool = -1;
  std::vector<std::uint32_t> members;
  std::vector<std::vector<std::int32_t>> factors;
};

/// Human-readable factor provenance: translators 0..5 print as g1..g6,
/// 6..11 as h1..h6, inverses with a trailing apostrophe.
std::string factor_name(std::int32_t f) {
  const bool inv = f < 0;
  const std::int32_t i = inv ? ~f : f;
  std::ostringstream os;
  os << (i < 6 ? 'g' : 'h') << (i % 6) + 1 << (inv ? "'" : "");
  return os.str();
}

FiniteSubset materialize(const Instance& ins,
                         const std::vector<FiniteSubset>& pools,
                         const TranslatingSet& t,
                         const std::vector<PiecewiseMap>& inverses) {
  if (ins.pool >= 0) {
    std::vector<PiecewiseMap> elems;
    elems.reserve(ins.members.size());
    for (const std::uint32_t i : ins.members)
      elems.push_back(pools[static_cast<std::size_t>(ins.pool)].elements()[i]);
    return FiniteSubset(std::move(elems));
  }
  std::vector<PiecewiseMap> elems;
  std::vector<std::string> words;
  for (const auto& fs : ins.factors) {
    PiecewiseMap acc = PiecewiseMap::identity();
    std::string word;
    for (const std::int32_t f : fs) {
      acc = pw_compose(acc, f >= 0 ? t.elements()[static_cast<std::size_t>(f)]
                                   : inverses[static_cast<std::size_t>(~f)]);
      if (!word.empty()) word += '.';
      word += factor_name(f);
    }
    elems.push_back(std::move(acc));
    words.push_back(std::move(word));
  }
  return FiniteSubset(std::move(elems), std::move(words));
}

/// Enumerates all index combinations of sizes 0..max_size in ascending
/// size-then-lexicographic order.
void enumerate_subsets(std::size_t pool_size, std::size_t max_size,
                       const std::function<void(const std::vector<std::uint32_t>&)>& emit) {
  std::vector<std::uint32_t> combo;
  const std::function<void(std::uint32_t, std::size_t)> rec =
      [&](std::uint32_t first, std::size_t want) {
        if (want == 0) {
          emit(combo);
          return;
        }
        for (std::uint32_t i = first; i + want <= pool_size; ++i) {
          combo.push_back(i);
          rec(i + 1, want - 1);
          combo.pop_back();
        }
      };
  for (std::size_t k = 0; k <= std::min(max_size, pool_size); ++k)
    rec(0, k);
}

}  // namespace

bool verify_agreement(const PiecewiseMap& elem, const std::string& word,
                      const GeneratorPair& gens, const Rational& i_lo,
                      const Rational& i_hi) {
  const Mat2 m = eval_word(word, gens);
  const RealAlgebraic lo(i_lo), hi(i_hi);
  const auto& bs = elem.breakpoints();
  const auto& ps = elem.pieces();
  for (std::size_t p = 0; p < ps.size(); ++p) {
    const bool meets =
        (p == 0 || bs[p - 1] < hi) && (p + 1 == ps.size() || lo < bs[p]);
    if (meets && !(ps[p] == m)) return false;
  }
  return true;
}

TranslatingSet build_translating_set(const PipelineConfig& cfg) {
  return build_stages(cfg, nullptr, nullptr);
}

CampaignReport run_campaign(const PipelineConfig& cfg, int jobs) {
  CampaignReport rep;
  rep.tset = build_stages(cfg, &rep.cert, &rep.search);
  run_campaign_stages(*rep.tset, cfg.plan, jobs, rep);
  return rep;
}

void run_campaign_stages(const TranslatingSet& t, const CampaignPlan& plan,
                         int jobs, CampaignReport& rep) {
  if (jobs < 1) throw ConfigError("jobs must be positive");
  std::vector<PiecewiseMap> inverses;
  inverses.reserve(t.elements().size());
  for (const auto& e : t.elements()) inverses.push_back(pw_invert(e));

  // Lay out every planned instance up front so ids, stages, and the merge
  // order are fixed before any worker starts.
  std::vector<FiniteSubset> pools;
  std::vector<Instance> instances;
  for (std::size_t s = 0; s < plan.exhaustive.size(); ++s) {
    const ExhaustiveStage& stage = plan.exhaustive[s];
    pools.push_back(ball(t.elements(), stage.radius));
    std::ostringstream label;
    label << "exhaustive[" << s << "]";
    enumerate_subsets(pools.back().size(), stage.max_size,
                      [&](const std::vector<std::uint32_t>& combo) {
                        Instance ins;
                        ins.stage = label.str();
                        ins.pool = static_cast<int>(s);
                        ins.members = combo;
                        instances.push_back(std::move(ins));
                      });
  }
  Rng rng(plan.seed);
  for (std::size_t s = 0; s < plan.random.size(); ++s) {
    const RandomStage& stage = plan.random[s];
    if (stage.max_size == 0 || stage.word_len < 1)
      throw ConfigError("random stage needs max_size >= 1 and word_len >= 1");
    std::ostringstream label;
    label << "random[" << s << "]";
    for (std::size_t n = 0; n < stage.count; ++n) {
      Instance ins;
      ins.stage = label.str();
      const std::size_t size = 1 + rng.index(stage.max_size);
      for (std::size_t e = 0; e < size; ++e) {
        std::vector<std::int32_t> fs;
        const int len = 1 + static_cast<int>(rng.index(
                                static_cast<std::size_t>(stage.word_len)));
        for (int k = 0; k < len; ++k) {
          const std::int32_t idx = static_cast<std::int32_t>(rng.index(24));
          fs.push_back(idx < 12 ? idx : ~(idx - 12));
        }
        ins.factors.push_back(std::move(fs));
      }
      instances.push_back(std::move(ins));
    }
  }

  rep.outcomes.resize(instances.size());
  std::vector<std::vector<CampaignFailure>> worker_failures(
      static_cast<std::size_t>(jobs));

  const auto worker = [&](int w) {
    // Subset elements recur constantly (ball members, short products), so
    // one memo per worker pays off; the cap bounds memory on plans with
    // long random words.  Results never depend on cache state.
    TranslateCache cache(t);
    constexpr std::size_t kCacheCap = 4096;
    for (std::size_t id = static_cast<std::size_t>(w); id < instances.size();
         id += static_cast<std::size_t>(jobs)) {
      const Instance& ins = instances[id];
      SubsetOutcome& out = rep.outcomes[id];
      out.id = id;
      out.stage = ins.stage;
      out.seed = plan.seed;
      if (cache.size() > kCacheCap) cache.clear();
      try {
        const FiniteSubset u = materialize(ins, pools, t, inverses);
        out.size = u.size();
        // 13|u| marriage products + 25|u| matching edges + 2|u| validation
        // recomputations: the abstract work the three checks touch.
        out.timing = 40 * static_cast<std::uint64_t>(u.size());

        const MarriageReport m = check_2marriage(t, u, &cache);
        out.lhs = m.lhs;
        out.rhs = m.rhs;
        out.marriage_pass = m.pass;
        if (!m.pass) {
          std::ostringstream os;
          os << ins.stage << " subset " << id << ": |S1*u| = " << m.lhs
             << " < " << m.rhs << " = 2|u|";
          worker_failures[static_cast<std::size_t>(w)].push_back(
              {id, os.str(), u, m});
        }

        const MatchingOutcome mo = extract_matching(t, u, u, &cache);
        out.matched = mo.matched;
        if (mo.matched)
          out.certificate_valid = validate_certificate(t, *mo.certificate).ok();
        if (!out.matched || !out.certificate_valid) {
          std::ostringstream os;
          os << ins.stage << " subset " << id
             << (out.matched ? ": certificate failed validation"
                             : ": no evenly colored matching exists");
          worker_failures[static_cast<std::size_t>(w)].push_back(
              {id, os.str(), u, MarriageReport{}});
        }
      } catch (const std::exception& e) {
        worker_failures[static_cast<std::size_t>(w)].push_back(
            {id, std::string("exception: ") + e.what(), FiniteSubset(),
             MarriageReport{}});
      }
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(jobs));
    for (int w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
    for (auto& th : threads) th.join();
  }

  for (auto& wf : worker_failures)
    for (auto& f : wf) rep.failures.push_back(std::move(f));
  std::sort(rep.failures.begin(), rep.failures.end(),
            [](const CampaignFailure& a, const CampaignFailure& b) {
              return a.subset_id < b.subset_id;
            });
  rep.instances = rep.outcomes.size();
  for (const SubsetOutcome& o : rep.outcomes) {
    rep.marriage_passes += o.marriage_pass ? 1 : 0;
    rep.matchings_found += o.matched ? 1 : 0;
    rep.certificates_valid += o.certificate_valid ? 1 : 0;
  }
}

}  // namespace paradec
