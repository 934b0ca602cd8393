/**
 * @file paradec.cpp
 * @brief Command-line entry points: distortion certificates, translating-word
 *        search, set construction, marriage campaigns, matching extraction,
 *        pigeonhole witnesses, and builtin generator self-checks.
 *
 * Every run logs its full resolved configuration as a single JSON line
 * before doing any work.  Artifacts land under --out DIR in the bundle
 * layout cert/, words/, tset/, reports/.
 *
 * Exit status: 0 when every requested check passed, 1 on a verified
 * negative finding (exhausted word search, failed marriage inequality,
 * missing matching, broken freeness claim), 2 on usage, config, or
 * internal arithmetic errors.
 */
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "paradec/distortion.hpp"
#include "paradec/errors.hpp"
#include "paradec/marriage.hpp"
#include "paradec/pipeline.hpp"
#include "paradec/serial.hpp"
#include "paradec/word.hpp"

using namespace paradec;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

/// Single-line resolved-config log, emitted by every subcommand up front.
void log_config(const json& j) {
  std::cout << "resolved config: " << j.dump() << "\n";
}

/// Writes an artifact under the bundle directory when --out was given.
void emit(const std::string& out_dir, const std::string& rel,
          const std::string& text) {
  if (out_dir.empty()) return;
  const std::string full = out_dir + "/" + rel;
  write_text_file(full, text);
  std::cout << "wrote " << full << "\n";
}

std::pair<Rational, Rational> parse_interval_flag(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw ConfigError("--interval expects 'lo,hi', got '" + text + "'");
  const Rational lo = rat_parse(text.substr(0, comma));
  const Rational hi = rat_parse(text.substr(comma + 1));
  if (!(lo < hi)) throw ConfigError("--interval is empty: '" + text + "'");
  return {lo, hi};
}

std::vector<long long> parse_int_list(const std::string& text, std::size_t n,
                                      const std::string& what) {
  std::vector<long long> vals;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string part =
        text.substr(start, comma == std::string::npos ? comma : comma - start);
    try {
      std::size_t used = 0;
      vals.push_back(std::stoll(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw ConfigError(what + ": expected comma-separated integers, got '" +
                        text + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (vals.size() != n)
    throw ConfigError(what + ": expected " + std::to_string(n) +
                      " comma-separated integers, got '" + text + "'");
  return vals;
}

TranslatingSet load_tset(const std::string& path) {
  return parse_translating_set(parse_json_text(read_text_file(path), path),
                               path);
}

FiniteSubset load_subset(const std::string& path) {
  return parse_finite_subset(parse_json_text(read_text_file(path), path), path);
}

// ---------------------------------------------------------------------------
// Option blocks; one per subcommand
// ---------------------------------------------------------------------------

struct BuildOpts {
  std::string config_file;
  std::string interval = "0,1";
  std::string epsilon = "1/48";
  std::string pair = "parabolic-small";
  int max_core_len = 12;
  std::string delta;  ///< find-words only: overrides the derived radius
  std::string out;
  bool interval_set = false, epsilon_set = false, pair_set = false,
       core_set = false;
};

/// Config file first, explicit flags override, defaults fill the rest.
PipelineConfig resolve_build_config(const BuildOpts& o) {
  PipelineConfig cfg;
  if (!o.config_file.empty())
    cfg = parse_pipeline_config(
        parse_json_text(read_text_file(o.config_file), o.config_file),
        o.config_file);
  if (o.config_file.empty() || o.interval_set) {
    const auto [lo, hi] = parse_interval_flag(o.interval);
    cfg.i_lo = lo;
    cfg.i_hi = hi;
  }
  if (o.config_file.empty() || o.epsilon_set) cfg.epsilon = rat_parse(o.epsilon);
  if (o.config_file.empty() || o.pair_set) cfg.pair_name = o.pair;
  if (o.config_file.empty() || o.core_set) cfg.max_core_len = o.max_core_len;
  return cfg;
}

json build_config_json(const PipelineConfig& cfg, const std::string& out) {
  json j = to_json(cfg);
  j["out"] = out;
  return j;
}

// ---------------------------------------------------------------------------
// distortion: certified contraction radius for (I, epsilon)
// ---------------------------------------------------------------------------

int run_distortion(const std::string& interval, const std::string& epsilon,
                   const std::string& out) {
  const auto [lo, hi] = parse_interval_flag(interval);
  const Rational eps = rat_parse(epsilon);
  log_config(json{{"interval", {rat_to_string(lo), rat_to_string(hi)}},
                  {"epsilon", rat_to_string(eps)},
                  {"out", out}});
  const DistortionCert cert = distortion_delta(lo, hi, eps);
  std::cout << "certified delta: " << rat_to_string(cert.delta) << "\n"
            << "radius R: " << rat_to_string(cert.radius)
            << "  (interval inside [-R, R])\n"
            << "derivative range on I for dist < delta: ("
            << rat_to_string(cert.deriv_lo) << ", "
            << rat_to_string(cert.deriv_hi) << ")\n"
            << "admitted measure distortion: (1 - "
            << rat_to_string(cert.epsilon) << ", 1 + "
            << rat_to_string(cert.epsilon) << ")\n";
  emit(out, "cert/distortion.json", dump_json(to_json(cert)));
  return 0;
}

// ---------------------------------------------------------------------------
// find-words: the twelve-conjugate-word search
// ---------------------------------------------------------------------------

int run_find_words(const BuildOpts& o) {
  const PipelineConfig cfg = resolve_build_config(o);
  json logj = build_config_json(cfg, o.out);
  if (!o.delta.empty()) logj["delta"] = o.delta;
  log_config(logj);

  const Rational delta = o.delta.empty()
                             ? distortion_delta(cfg.i_lo, cfg.i_hi, cfg.epsilon).delta
                             : rat_parse(o.delta);
  const GeneratorPair gens = builtin_pair(cfg.pair_name);
  const WordSearchResult r =
      find_translating_words(gens, delta, RealAlgebraic(cfg.i_lo),
                             RealAlgebraic(cfg.i_hi), cfg.max_core_len);
  emit(o.out, "words/search.json", dump_json(to_json(r)));
  std::cout << "delta: " << rat_to_string(delta) << "\n"
            << "g-side: " << r.g_stats.str() << "\n"
            << "h-side: " << r.h_stats.str() << "\n";
  if (!r.found) {
    std::cout << "no translating words at core length <= " << cfg.max_core_len
              << ": " << r.note << "\n";
    return 1;
  }
  std::cout << "cores: g = '" << r.words.g_core << "', h = '" << r.words.h_core
            << "'\n";
  std::vector<std::string> words;
  for (int i = 0; i < 6; ++i) {
    std::cout << "g[" << (i + 1) << "] = " << r.words.g_words[i] << "\n";
    words.push_back(r.words.g_words[i]);
  }
  for (int i = 0; i < 6; ++i) {
    std::cout << "h[" << (i + 1) << "] = " << r.words.h_words[i] << "\n";
    words.push_back(r.words.h_words[i]);
  }
  emit(o.out, "words/translating.txt", words_to_text(words));
  return 0;
}

// ---------------------------------------------------------------------------
// build-set: construct, re-verify, and bundle the translating set
// ---------------------------------------------------------------------------

int run_build_set(const BuildOpts& o) {
  const PipelineConfig cfg = resolve_build_config(o);
  log_config(build_config_json(cfg, o.out));

  const TranslatingSet t = build_translating_set(cfg);
  const DistortionCert cert = distortion_delta(cfg.i_lo, cfg.i_hi, cfg.epsilon);
  std::cout << "delta: " << rat_to_string(t.delta()) << "\n"
            << "translating set: " << t.elements().size()
            << " elements plus identity = " << (t.elements().size() + 1)
            << " translators, " << t.piece_count()
            << " decomposition pieces\n";
  for (std::size_t i = 0; i < t.elements().size(); ++i)
    std::cout << "  element " << i << ": word " << t.source_words()[i] << ", "
              << t.elements()[i].pieces().size() << " pieces\n";
  emit(o.out, "config.json", dump_json(to_json(cfg)));
  emit(o.out, "cert/distortion.json", dump_json(to_json(cert)));
  emit(o.out, "words/translating.txt", words_to_text(t.source_words()));
  emit(o.out, "tset/tset.json", dump_json(to_json(t)));
  return 0;
}

// ---------------------------------------------------------------------------
// check-marriage: exhaustive and random campaign stages over a bundled set
// ---------------------------------------------------------------------------

struct MarriageOpts {
  std::string tset_file;
  std::vector<std::string> exhaustive;
  std::vector<std::string> random;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string out;
};

int run_check_marriage(const MarriageOpts& o) {
  CampaignPlan plan;
  plan.seed = o.seed;
  for (const std::string& s : o.exhaustive) {
    const auto v = parse_int_list(s, 2, "--exhaustive");
    plan.exhaustive.push_back(
        {static_cast<int>(v[0]), static_cast<std::size_t>(v[1])});
  }
  for (const std::string& s : o.random) {
    const auto v = parse_int_list(s, 3, "--random");
    plan.random.push_back({static_cast<std::size_t>(v[0]),
                           static_cast<std::size_t>(v[1]),
                           static_cast<int>(v[2])});
  }
  if (plan.exhaustive.empty() && plan.random.empty())
    plan.exhaustive.push_back({1, 2});

  json stages = json::array();
  for (const ExhaustiveStage& st : plan.exhaustive)
    stages.push_back(json{{"radius", st.radius},
                          {"max_size", static_cast<std::uint64_t>(st.max_size)}});
  json rstages = json::array();
  for (const RandomStage& st : plan.random)
    rstages.push_back(json{{"count", static_cast<std::uint64_t>(st.count)},
                           {"max_size", static_cast<std::uint64_t>(st.max_size)},
                           {"word_len", st.word_len}});
  log_config(json{{"tset", o.tset_file},
                  {"exhaustive", stages},
                  {"random", rstages},
                  {"seed", o.seed},
                  {"jobs", o.jobs},
                  {"out", o.out}});

  const TranslatingSet t = load_tset(o.tset_file);
  CampaignReport rep;
  rep.cert = distortion_delta(t.i_lo(), t.i_hi(), t.epsilon());
  run_campaign_stages(t, plan, o.jobs, rep);

  std::cout << "instances: " << rep.instances
            << "  marriage passes: " << rep.marriage_passes
            << "  matchings: " << rep.matchings_found
            << "  certificates validated: " << rep.certificates_valid << "\n";
  json records = json::array();
  for (const SubsetOutcome& so : rep.outcomes) records.push_back(to_json(so));
  json failures = json::array();
  for (const CampaignFailure& f : rep.failures) failures.push_back(to_json(f));
  emit(o.out, "reports/marriage.json",
       dump_json(json{
           {"records", std::move(records)},
           {"failures", std::move(failures)},
           {"instances", static_cast<std::uint64_t>(rep.instances)},
           {"marriage_passes", static_cast<std::uint64_t>(rep.marriage_passes)},
           {"matchings_found", static_cast<std::uint64_t>(rep.matchings_found)},
           {"certificates_valid",
            static_cast<std::uint64_t>(rep.certificates_valid)}}));
  if (!rep.failures.empty()) {
    for (const CampaignFailure& f : rep.failures)
      std::cout << "violation at subset " << f.subset_id << ": " << f.what
                << "\n";
    return 1;
  }
  std::cout << "no violations found\n";
  return 0;
}

// ---------------------------------------------------------------------------
// extract-matching: evenly colored 2-matching or Hall violator
// ---------------------------------------------------------------------------

struct MatchingOpts {
  std::string tset_file;
  int radius = 1;
  std::string u1_file, u2_file;
  std::string out;
};

int run_extract_matching(const MatchingOpts& o) {
  log_config(json{{"tset", o.tset_file},
                  {"ball", o.radius},
                  {"u1", o.u1_file},
                  {"u2", o.u2_file},
                  {"out", o.out}});
  const TranslatingSet t = load_tset(o.tset_file);
  FiniteSubset u1, u2;
  if (!o.u1_file.empty()) {
    u1 = load_subset(o.u1_file);
    u2 = o.u2_file.empty() ? u1 : load_subset(o.u2_file);
  } else if (!o.u2_file.empty()) {
    throw ConfigError("--u2 needs --u1");
  } else {
    u1 = ball(t.elements(), o.radius);
    u2 = u1;
  }
  std::cout << "|u1| = " << u1.size() << ", |u2| = " << u2.size() << "\n";

  const MatchingOutcome mo = extract_matching(t, u1, u2);
  emit(o.out, "reports/matching.json", dump_json(to_json(mo)));
  if (!mo.matched) {
    std::cout << "no evenly colored 2-matching: Hall violator of size "
              << mo.violator_size << " with neighborhood "
              << mo.neighborhood_size << "\n";
    return 1;
  }
  const ValidationReport audit = validate_certificate(t, *mo.certificate);
  if (!audit.ok()) {
    std::string what = "freshly extracted certificate failed validation:";
    for (const std::string& v : audit.violations) what += "\n  " + v;
    throw MathError(what);
  }
  std::cout << "matching found: " << mo.certificate->edges.size()
            << " colored edges, all targets distinct\n"
            << "independent validation: ok\n";
  emit(o.out, "reports/certificate.json", dump_json(to_json(*mo.certificate)));
  return 0;
}

// ---------------------------------------------------------------------------
// pigeonhole: coverage-4 witness with exact measure accounting
// ---------------------------------------------------------------------------

struct PigeonholeOpts {
  std::string interval = "0,1";
  std::string j_file;
  std::string maps_file;
  std::vector<std::string> map_texts;
  std::string tset_file;
  std::string out;
};

int run_pigeonhole(const PigeonholeOpts& o) {
  log_config(json{{"interval", o.interval},
                  {"j", o.j_file},
                  {"maps", o.maps_file},
                  {"map", o.map_texts},
                  {"tset", o.tset_file},
                  {"out", o.out}});
  const auto [lo, hi] = parse_interval_flag(o.interval);

  const int sources = (o.maps_file.empty() ? 0 : 1) +
                      (o.map_texts.empty() ? 0 : 1) +
                      (o.tset_file.empty() ? 0 : 1);
  if (sources != 1)
    throw ConfigError(
        "pigeonhole needs exactly one map source: --maps FILE, six --map "
        "literals, or --tset FILE");
  std::vector<Mat2> gs;
  if (!o.maps_file.empty()) {
    const json arr = parse_json_text(read_text_file(o.maps_file), o.maps_file);
    if (!arr.is_array())
      throw ConfigError(o.maps_file + ": expected an array of matrices");
    for (std::size_t i = 0; i < arr.size(); ++i)
      gs.push_back(parse_mat2(arr[i], o.maps_file + "[" + std::to_string(i) + "]"));
  } else if (!o.map_texts.empty()) {
    for (const std::string& text : o.map_texts) gs.push_back(parse_mat2_text(text));
  } else {
    // The six g-side words of a bundled set are exactly the lemma's maps.
    const TranslatingSet t = load_tset(o.tset_file);
    for (std::size_t i = 0; i < 6; ++i)
      gs.push_back(eval_word(t.source_words()[i], t.gens()));
  }

  const IntervalSet j =
      o.j_file.empty()
          ? IntervalSet::interval(RealAlgebraic(lo), RealAlgebraic(hi))
          : parse_interval_set(parse_json_text(read_text_file(o.j_file), o.j_file),
                               o.j_file);

  const PigeonholeWitness w = pigeonhole_witness(lo, hi, j, gs);
  std::cout << "witness cell union L: " << w.cell_union.str() << "\n"
            << "covering indices:";
  for (int i : w.indices) std::cout << " " << i;
  std::cout << "\nfull coverage set of L:";
  for (int i : w.coverage) std::cout << " " << i;
  std::cout << "\nsum of mu(L_i): " << w.total.str() << "  >  3 mu(I): "
            << w.gate.str() << "\n";
  emit(o.out, "reports/pigeonhole.json", dump_json(to_json(w)));
  return 0;
}

// ---------------------------------------------------------------------------
// verify-relations / no-relation: builtin self-checks and freeness evidence
// ---------------------------------------------------------------------------

struct RelationOpts {
  std::string group;
  int max_len = 10;
  std::string scan_delta = "1/195";
  int scan_len = 2;
  std::string out;
};

PiecewiseMap commutator(const PiecewiseMap& g, const PiecewiseMap& h) {
  return pw_compose(pw_compose(pw_compose(g, h), pw_invert(g)), pw_invert(h));
}

int run_verify_relations(const RelationOpts& o) {
  log_config(json{{"group", o.group},
                  {"max_len", o.max_len},
                  {"scan_delta", o.scan_delta},
                  {"scan_len", o.scan_len},
                  {"out", o.out}});
  json checks = json::array();
  bool all = true;
  const auto record = [&](const std::string& name, bool pass) {
    std::cout << (pass ? "pass" : "FAIL") << ": " << name << "\n";
    checks.push_back(json{{"name", name}, {"pass", pass}});
    all = all && pass;
  };

  if (o.group == "thompson-f") {
    const std::vector<PiecewiseMap> gens = builtin_generators("thompson-f");
    const PiecewiseMap& x0 = gens[0];
    const PiecewiseMap& x1 = gens[1];
    record("x0 passes integer ring validation",
           pw_validate(x0, Ring::integers).ok());
    record("x1 passes integer ring validation",
           pw_validate(x1, Ring::integers).ok());
    const PiecewiseMap p = pw_compose(x0, pw_invert(x1));  // x0 x1^-1
    const PiecewiseMap c1 = pw_compose(pw_compose(pw_invert(x0), x1), x0);
    const PiecewiseMap c2 = pw_compose(
        pw_compose(pw_compose(pw_invert(x0), pw_invert(x0)), x1),
        pw_compose(x0, x0));
    record("[x0 x1^-1, x0^-1 x1 x0] is the identity",
           pw_equal(commutator(p, c1), PiecewiseMap::identity()));
    record("[x0 x1^-1, x0^-2 x1 x0^2] is the identity",
           pw_equal(commutator(p, c2), PiecewiseMap::identity()));
  } else {
    // Matrix pairs claim freeness evidence, not relations: no reduced word
    // up to max_len evaluates to the identity, and the near-identity ball
    // that the word search mines is nonempty at the shipped radius.
    const GeneratorPair gens = builtin_pair(o.group);
    const NoRelationResult r = certify_no_relation(gens, o.max_len);
    record("no reduced word of length 1.." + std::to_string(o.max_len) +
               " evaluates to the identity (" + std::to_string(r.words_checked) +
               " words checked)",
           r.certified);
    if (!r.certified)
      std::cout << "  counterexample: " << r.counterexample << "\n";
    const auto scan =
        near_identity_scan(gens, rat_parse(o.scan_delta), o.scan_len);
    record("near-identity words exist within " + o.scan_delta +
               " at length <= " + std::to_string(o.scan_len) + " (" +
               std::to_string(scan.size() - 1) + " nontrivial)",
           scan.size() > 1);  // the empty word is always present
  }
  emit(o.out, "reports/relations.json",
       dump_json(json{{"group", o.group}, {"checks", std::move(checks)}}));
  return all ? 0 : 1;
}

struct NoRelationOpts {
  std::string pair = "parabolic-small";
  std::string a_text, b_text;
  int max_len = 10;
  std::string out;
};

int run_no_relation(const NoRelationOpts& o) {
  log_config(json{{"pair", o.pair},
                  {"a", o.a_text},
                  {"b", o.b_text},
                  {"max_len", o.max_len},
                  {"out", o.out}});
  if (o.a_text.empty() != o.b_text.empty())
    throw ConfigError("--a and --b must be given together");
  const GeneratorPair gens =
      o.a_text.empty()
          ? builtin_pair(o.pair)
          : GeneratorPair(parse_mat2_text(o.a_text), parse_mat2_text(o.b_text),
                          "command line");
  const NoRelationResult r = certify_no_relation(gens, o.max_len);
  emit(o.out, "reports/no_relation.json", dump_json(to_json(r)));
  if (!r.certified) {
    std::cout << "relation found: '" << r.counterexample
              << "' evaluates to the identity (" << r.words_checked
              << " words checked)\n";
    return 1;
  }
  std::cout << "certified: no reduced word of length 1.." << o.max_len
            << " evaluates to the identity (" << r.words_checked
            << " words checked)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact construction and verification of a 25-piece paradoxical "
      "decomposition over piecewise projective homeomorphisms"};
  app.require_subcommand(1);
  int rc = 0;

  // distortion
  std::string d_interval = "0,1", d_epsilon = "1/48", d_out;
  CLI::App* dist = app.add_subcommand(
      "distortion", "certified entry-distance radius delta for (I, epsilon)");
  dist->add_option("--interval", d_interval, "compact interval 'lo,hi'");
  dist->add_option("--epsilon", d_epsilon, "admitted distortion in (0,1)");
  dist->add_option("--out", d_out, "artifact bundle directory");
  dist->callback([&] { rc = run_distortion(d_interval, d_epsilon, d_out); });

  const auto add_build_opts = [](CLI::App* sub, BuildOpts& o) {
    sub->add_option("--config", o.config_file, "pipeline config JSON file");
    sub->add_option("--interval", o.interval, "compact interval 'lo,hi'");
    sub->add_option("--epsilon", o.epsilon, "admitted distortion in (0,1)");
    sub->add_option("--pair", o.pair, "builtin generator pair name");
    sub->add_option("--max-core-len", o.max_core_len, "core word length bound");
    sub->add_option("--out", o.out, "artifact bundle directory");
  };

  // find-words
  BuildOpts fw;
  CLI::App* find = app.add_subcommand(
      "find-words", "search the delta-ball for twelve conjugate words");
  add_build_opts(find, fw);
  find->add_option("--delta", fw.delta, "override the derived radius");
  find->callback([&] {
    fw.interval_set = find->count("--interval") > 0;
    fw.epsilon_set = find->count("--epsilon") > 0;
    fw.pair_set = find->count("--pair") > 0;
    fw.core_set = find->count("--max-core-len") > 0;
    rc = run_find_words(fw);
  });

  // build-set
  BuildOpts bs;
  CLI::App* build = app.add_subcommand(
      "build-set", "construct and re-verify the translating set bundle");
  add_build_opts(build, bs);
  build->callback([&] {
    bs.interval_set = build->count("--interval") > 0;
    bs.epsilon_set = build->count("--epsilon") > 0;
    bs.pair_set = build->count("--pair") > 0;
    bs.core_set = build->count("--max-core-len") > 0;
    rc = run_build_set(bs);
  });

  // check-marriage
  MarriageOpts cm;
  CLI::App* marriage = app.add_subcommand(
      "check-marriage", "campaign of exact 2-marriage checks over subsets");
  marriage->add_option("--tset", cm.tset_file, "translating set bundle JSON")
      ->required();
  marriage->add_option("--exhaustive", cm.exhaustive,
                       "stage 'radius,max_size' (repeatable)");
  marriage->add_option("--random", cm.random,
                       "stage 'count,max_size,word_len' (repeatable)");
  marriage->add_option("--seed", cm.seed, "campaign seed");
  marriage->add_option("--jobs", cm.jobs, "worker count");
  marriage->add_option("--out", cm.out, "artifact bundle directory");
  marriage->callback([&] { rc = run_check_marriage(cm); });

  // extract-matching
  MatchingOpts em;
  CLI::App* match = app.add_subcommand(
      "extract-matching", "evenly colored 2-matching or Hall violator");
  match->add_option("--tset", em.tset_file, "translating set bundle JSON")
      ->required();
  match->add_option("--ball", em.radius, "u1 = u2 = ball of this radius");
  match->add_option("--u1", em.u1_file, "finite subset JSON for color 1");
  match->add_option("--u2", em.u2_file, "finite subset JSON for color 2");
  match->add_option("--out", em.out, "artifact bundle directory");
  match->callback([&] { rc = run_extract_matching(em); });

  // pigeonhole
  PigeonholeOpts ph;
  CLI::App* pigeon = app.add_subcommand(
      "pigeonhole", "coverage-4 witness with exact measure accounting");
  pigeon->add_option("--interval", ph.interval, "compact interval 'lo,hi'");
  pigeon->add_option("--j", ph.j_file, "interval set JSON for J (default: I)");
  pigeon->add_option("--maps", ph.maps_file, "JSON array of six matrices");
  pigeon->add_option("--map", ph.map_texts,
                     "matrix literal '[a, b; c, d]' (repeat six times)");
  pigeon->add_option("--tset", ph.tset_file,
                     "use the six g-side words of this bundle");
  pigeon->add_option("--out", ph.out, "artifact bundle directory");
  pigeon->callback([&] { rc = run_pigeonhole(ph); });

  // verify-relations
  RelationOpts vr;
  CLI::App* verify = app.add_subcommand(
      "verify-relations", "builtin generator self-checks");
  verify->add_option("--group", vr.group,
                     "'thompson-f' or a builtin pair name")
      ->required();
  verify->add_option("--max-len", vr.max_len, "freeness check depth");
  verify->add_option("--scan-delta", vr.scan_delta, "near-identity radius");
  verify->add_option("--scan-len", vr.scan_len, "near-identity word length");
  verify->add_option("--out", vr.out, "artifact bundle directory");
  verify->callback([&] { rc = run_verify_relations(vr); });

  // no-relation
  NoRelationOpts nr;
  CLI::App* norel = app.add_subcommand(
      "no-relation", "exhaustive freeness certificate up to a length bound");
  norel->add_option("--pair", nr.pair, "builtin generator pair name");
  norel->add_option("--a", nr.a_text, "matrix literal for generator a");
  norel->add_option("--b", nr.b_text, "matrix literal for generator b");
  norel->add_option("--max-len", nr.max_len, "word length bound");
  norel->add_option("--out", nr.out, "artifact bundle directory");
  norel->callback([&] { rc = run_no_relation(nr); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors are config errors
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const MathError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
