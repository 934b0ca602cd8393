/**
 * @file test_serial.cpp
 * @brief JSON roundtrips for every exported type, strict schema rejection
 *        with path diagnostics, the quick-entry text grammar, word files,
 *        and byte-determinism of campaign reports.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <string>
#include <vector>

#include "paradec/errors.hpp"
#include "paradec/pipeline.hpp"
#include "paradec/rng.hpp"
#include "paradec/serial.hpp"

using namespace paradec;
using nlohmann::json;

namespace {

Rational rat(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

QSqrt2 q(long n, long d = 1) { return QSqrt2(rat(n, d)); }

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

/// Runs fn, which must throw ConfigError, and returns the message.
template <class Fn>
std::string config_what(Fn&& fn) {
  try {
    fn();
  } catch (const ConfigError& e) {
    return e.what();
  }
  FAIL("expected ConfigError");
  return "";
}

/// The default construction, built once; several cases parse against it.
const TranslatingSet& default_set() {
  static const TranslatingSet t = build_translating_set(PipelineConfig{});
  return t;
}

}  // namespace

TEST_CASE("rationals and qsqrt2 values roundtrip strictly") {
  CHECK(to_json(rat(-3, 4)) == json("-3/4"));
  CHECK(to_json(rat(0)) == json("0/1"));
  CHECK(parse_rational(json("7"), "x") == rat(7));

  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const long num = static_cast<long>(rng.uniform(0, 4000)) - 2000;
    const long den = 1 + static_cast<long>(rng.index(999));
    const Rational v = rat(num, den);
    CHECK(parse_rational(to_json(v), "x") == v);
    const QSqrt2 w(v, rat(static_cast<long>(rng.index(41)) - 20,
                          1 + static_cast<long>(rng.index(9))));
    CHECK(parse_qsqrt2(to_json(w), "x") == w);
  }

  CHECK(contains(config_what([] { parse_rational(json("2/4"), "cfg.eps"); }),
                 "cfg.eps: rational literal not reduced"));
  CHECK(contains(config_what([] { parse_rational(json("1/-2"), "x"); }), "x: "));
  CHECK(contains(config_what([] { parse_rational(json("1.5"), "x"); }), "x: "));
  CHECK(contains(config_what([] { parse_rational(json(5), "x"); }),
                 "x: expected a string"));

  const json bad_extra{{"r", "1/2"}, {"s", "0/1"}, {"t", "0/1"}};
  CHECK(contains(config_what([&] { parse_qsqrt2(bad_extra, "q"); }),
                 "q.t: unknown field"));
  const json bad_missing{{"r", "1/2"}};
  CHECK(contains(config_what([&] { parse_qsqrt2(bad_missing, "q"); }),
                 "q.s: missing field"));
}

TEST_CASE("real algebraic values roundtrip through poly and isolator") {
  std::vector<RealAlgebraic> values;
  values.emplace_back(rat(1, 2));
  values.emplace_back(rat(-7));
  values.emplace_back(QSqrt2::sqrt2());
  values.emplace_back(QSqrt2(rat(1), rat(-3, 2)));
  values.push_back(RealAlgebraic::quadratic_root(q(1), q(-1), q(-1), +1));  // golden
  values.push_back(RealAlgebraic::from_parts(Poly({rat(-2), rat(0), rat(0), rat(1)}),
                                             rat(1), rat(2)));  // cbrt 2
  values.push_back(RealAlgebraic::from_parts(
      Poly({rat(-2), rat(0), rat(0), rat(0), rat(1)}), rat(1), rat(3, 2)));  // 2^(1/4)
  for (const RealAlgebraic& v : values) {
    const RealAlgebraic back = parse_real_algebraic(to_json(v), "x");
    CHECK(RealAlgebraic::compare(v, back) == 0);
    CHECK(v.canonical_key() == back.canonical_key());
  }

  // The quadratic-extension fast path is re-attached on parse.
  const RealAlgebraic root2 = parse_real_algebraic(to_json(values[2]), "x");
  REQUIRE(root2.as_qsqrt2().has_value());
  CHECK(*root2.as_qsqrt2() == QSqrt2::sqrt2());

  // Two roots inside the isolator, a root at an endpoint, a constant poly.
  const json two{{"poly", {"-2/1", "0/1", "1/1"}}, {"lo", "-2/1"}, {"hi", "2/1"}};
  CHECK(contains(config_what([&] { parse_real_algebraic(two, "ra"); }), "ra: "));
  const json endpoint{{"poly", {"-1/1", "0/1", "1/1"}}, {"lo", "0/1"}, {"hi", "1/1"}};
  CHECK(contains(config_what([&] { parse_real_algebraic(endpoint, "ra"); }), "ra: "));
  const json constant{{"poly", {"1/1"}}, {"lo", "0/1"}, {"hi", "1/1"}};
  CHECK(contains(config_what([&] { parse_real_algebraic(constant, "ra"); }), "ra: "));
}

TEST_CASE("matrices roundtrip in canonical sign form") {
  const GeneratorPair gens = builtin_pair("parabolic-small");
  Rng rng(11);
  const std::string alphabet = "aAbB";
  for (int i = 0; i < 100; ++i) {
    std::string word;
    const std::size_t len = 1 + rng.index(8);
    for (std::size_t k = 0; k < len; ++k) word.push_back(alphabet[rng.index(4)]);
    const Mat2 m = eval_word(word, gens);
    CHECK(parse_mat2(to_json(m), "m") == m);
  }

  // A negated entry table parses to the same canonical representative.
  json neg = to_json(Mat2::identity());
  neg["a"]["r"] = "-1";
  neg["d"]["r"] = "-1";
  CHECK(parse_mat2(neg, "m") == Mat2::identity());

  json zero = to_json(Mat2::identity());
  zero["a"]["r"] = "0";
  zero["d"]["r"] = "0";
  CHECK(contains(config_what([&] { parse_mat2(zero, "m"); }),
                 "m: matrix is singular"));
}

TEST_CASE("piecewise maps and interval sets roundtrip") {
  std::vector<PiecewiseMap> maps;
  maps.push_back(PiecewiseMap::identity());
  for (const PiecewiseMap& g : builtin_generators("thompson-f")) maps.push_back(g);
  // Quadratic-irrational breakpoints via a genuine splice.
  maps.push_back(splice_lift(Mat2(q(2), q(1), q(1), q(1)), RealAlgebraic(rat(0)),
                             RealAlgebraic(rat(1))));
  for (const PiecewiseMap& m : maps) {
    const PiecewiseMap back = parse_piecewise(to_json(m), "pm");
    CHECK(pw_equal(m, back));
    CHECK(m.key() == back.key());
  }

  json mismatch = to_json(PiecewiseMap::identity());
  mismatch["breakpoints"].push_back(to_json(RealAlgebraic(rat(0))));
  CHECK(contains(config_what([&] { parse_piecewise(mismatch, "pm"); }),
                 "pm: piecewise map needs exactly one more piece"));

  const PiecewiseMap shift = pw_normalize(
      PiecewiseMap({}, {Mat2(q(1), q(1), q(0), q(1))}));
  json discont = to_json(shift);
  discont["breakpoints"].push_back(to_json(RealAlgebraic(rat(0))));
  discont["pieces"].push_back(to_json(Mat2::identity()));
  CHECK(contains(config_what([&] { parse_piecewise(discont, "pm"); }),
                 "pm: discontinuity"));

  const IntervalSet s = set_union(
      IntervalSet::interval(RealAlgebraic(rat(0)), RealAlgebraic(rat(1, 2))),
      IntervalSet::interval(RealAlgebraic(QSqrt2::sqrt2()), RealAlgebraic(rat(2))));
  CHECK(parse_interval_set(to_json(s), "js") == s);

  // Parsing normalizes: overlapping entries merge.
  json overlap;
  overlap["intervals"] = json::array();
  overlap["intervals"].push_back(
      json{{"lo", to_json(RealAlgebraic(rat(0)))},
           {"hi", to_json(RealAlgebraic(rat(1)))}});
  overlap["intervals"].push_back(
      json{{"lo", to_json(RealAlgebraic(rat(1, 2)))},
           {"hi", to_json(RealAlgebraic(rat(3, 2)))}});
  CHECK(parse_interval_set(overlap, "js") ==
        IntervalSet::interval(RealAlgebraic(rat(0)), RealAlgebraic(rat(3, 2))));
}

TEST_CASE("distortion certificates are rechecked on parse") {
  const DistortionCert c = distortion_delta(rat(0), rat(1), rat(1, 48));
  const DistortionCert back = parse_distortion_cert(to_json(c), "cert");
  CHECK(back.i_lo == c.i_lo);
  CHECK(back.i_hi == c.i_hi);
  CHECK(back.epsilon == c.epsilon);
  CHECK(back.delta == c.delta);
  CHECK(back.radius == c.radius);
  CHECK(back.deriv_lo == c.deriv_lo);
  CHECK(back.deriv_hi == c.deriv_hi);

  json wrong = to_json(c);
  wrong["deriv_lo"] = "1/2";
  CHECK(contains(config_what([&] { parse_distortion_cert(wrong, "cert"); }),
                 "cert.deriv_lo: does not equal"));
  json coarse = to_json(c);
  coarse["delta"] = "2/195";
  CHECK(contains(config_what([&] { parse_distortion_cert(coarse, "cert"); }),
                 "cert.delta: must be of the form 1/n"));
}

TEST_CASE("generator pairs and finite subsets roundtrip") {
  for (const std::string& name : builtin_pair_names()) {
    const GeneratorPair gp = builtin_pair(name);
    const GeneratorPair back = parse_generator_pair(to_json(gp), "gens");
    CHECK(back.a == gp.a);
    CHECK(back.b == gp.b);
    CHECK(back.provenance == gp.provenance);
  }

  const std::vector<PiecewiseMap> gens = builtin_generators("thompson-f");
  const FiniteSubset u = ball(gens, 1);
  const FiniteSubset back = parse_finite_subset(to_json(u), "u");
  REQUIRE(back.size() == u.size());
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(back.key_of(i) == u.key_of(i));

  // Word provenance survives and stays parallel to the elements.
  const FiniteSubset labeled({PiecewiseMap::identity(), gens[0]}, {"", "x0"});
  const FiniteSubset lb = parse_finite_subset(to_json(labeled), "u");
  REQUIRE(lb.source_words().size() == lb.size());
  for (std::size_t i = 0; i < lb.size(); ++i)
    CHECK(lb.source_words()[i] == labeled.source_words()[i]);

  json short_words = to_json(labeled);
  short_words["source_words"].erase(1);
  CHECK(contains(config_what([&] { parse_finite_subset(short_words, "u"); }),
                 "u: source words"));
}

TEST_CASE("translating set bundles re-verify on parse") {
  const TranslatingSet& t = default_set();
  const json bundle = to_json(t);
  const TranslatingSet back = parse_translating_set(bundle, "tset");
  REQUIRE(back.elements().size() == 12);
  for (std::size_t i = 0; i < 12; ++i) {
    CHECK(pw_equal(back.elements()[i], t.elements()[i]));
    CHECK(back.source_words()[i] == t.source_words()[i]);
  }
  CHECK(back.gens().a == t.gens().a);
  CHECK(back.gens().b == t.gens().b);
  CHECK(back.i_lo() == t.i_lo());
  CHECK(back.i_hi() == t.i_hi());
  CHECK(back.delta() == t.delta());
  CHECK(back.epsilon() == t.epsilon());

  // A tampered bundle fails the constructor's agreement re-verification.
  json tampered = bundle;
  tampered["source_words"][0] = tampered["source_words"][6];
  CHECK(contains(config_what([&] { parse_translating_set(tampered, "tset"); }),
                 "tset: translating set invariants violated"));
}

TEST_CASE("matching certificates roundtrip by serial number") {
  const TranslatingSet& t = default_set();
  const FiniteSubset u({PiecewiseMap::identity(), t.elements()[0], t.elements()[5]});
  const MatchingOutcome out = extract_matching(t, u, u);
  REQUIRE(out.matched);
  const MatchingCertificate& cert = *out.certificate;

  const json file = to_json(cert);
  // The element table is duplicate-free and every serial is in range, or
  // parsing would reject; the parsed value must byte-reproduce the file.
  const MatchingCertificate back = parse_matching_certificate(file, "cert");
  CHECK(dump_json(to_json(back)) == dump_json(file));
  REQUIRE(back.edges.size() == cert.edges.size());
  for (std::size_t i = 0; i < cert.edges.size(); ++i) {
    CHECK(back.edges[i].color == cert.edges[i].color);
    CHECK(pw_equal(back.edges[i].left, cert.edges[i].left));
    CHECK(pw_equal(back.edges[i].translator, cert.edges[i].translator));
    CHECK(pw_equal(back.edges[i].target, cert.edges[i].target));
  }
  CHECK(validate_certificate(t, back).ok());

  json out_of_range = file;
  out_of_range["edges"][0]["target"] = file["elements"].size();
  CHECK(contains(
      config_what([&] { parse_matching_certificate(out_of_range, "cert"); }),
      "exceeds the element table"));
}

TEST_CASE("pipeline configs roundtrip with full plans") {
  PipelineConfig cfg;
  cfg.i_lo = rat(-1, 3);
  cfg.i_hi = rat(5, 2);
  cfg.epsilon = rat(1, 2);
  cfg.pair_name = "sanov";
  cfg.max_core_len = 4;
  cfg.plan.exhaustive = {{1, 2}, {2, 3}};
  cfg.plan.random = {{40, 4, 2}, {7, 8, 3}};
  cfg.plan.seed = 16045690984833335023ULL;  // above 2^63: uint64 exactness

  const json j = to_json(cfg);
  const PipelineConfig back = parse_pipeline_config(j, "cfg");
  CHECK(back.i_lo == cfg.i_lo);
  CHECK(back.i_hi == cfg.i_hi);
  CHECK(back.epsilon == cfg.epsilon);
  CHECK(back.pair_name == cfg.pair_name);
  CHECK(back.max_core_len == cfg.max_core_len);
  CHECK(back.plan.seed == cfg.plan.seed);
  REQUIRE(back.plan.exhaustive.size() == 2);
  CHECK(back.plan.exhaustive[1].radius == 2);
  CHECK(back.plan.exhaustive[1].max_size == 3);
  REQUIRE(back.plan.random.size() == 2);
  CHECK(back.plan.random[0].count == 40);
  CHECK(back.plan.random[1].word_len == 3);
  CHECK(dump_json(to_json(back)) == dump_json(j));

  json zero_len = j;
  zero_len["plan"]["random"][0]["word_len"] = 0;
  CHECK(contains(config_what([&] { parse_pipeline_config(zero_len, "cfg"); }),
                 "cfg.plan.random[0].word_len: must be at least 1"));
  json stray = j;
  stray["plan"]["budget"] = 3;
  CHECK(contains(config_what([&] { parse_pipeline_config(stray, "cfg"); }),
                 "cfg.plan.budget: unknown field"));
  json eps = j;
  eps["epsilon"] = "3/2";
  CHECK(contains(config_what([&] { parse_pipeline_config(eps, "cfg"); }),
                 "cfg.epsilon: must lie in (0, 1)"));
}

TEST_CASE("quick-entry text grammar parses matrices and maps") {
  const GeneratorPair gens = builtin_pair("parabolic-small");
  CHECK(parse_mat2_text("[1, -1/256; 0, 1]") == gens.a);
  CHECK(parse_mat2_text("[sqrt2, 0; 0, 1/2*sqrt2]") ==
        Mat2(QSqrt2::sqrt2(), q(0), q(0), QSqrt2(rat(0), rat(1, 2))));
  CHECK(parse_mat2_text("[1+2*sqrt2, 0; 0, -1/7+2/7*sqrt2]") ==
        Mat2(QSqrt2(rat(1), rat(2)), q(0), q(0), QSqrt2(rat(-1, 7), rat(2, 7))));
  // Determinant normalization applies: det 2 scales to det 1.
  CHECK(parse_mat2_text("[1, 0; 0, 2]") == Mat2(q(1), q(0), q(0), q(2)));
  CHECK_THROWS_AS(parse_mat2_text("[0, 1; 1, 0]"), ConfigError);  // det -1
  CHECK_THROWS_AS(parse_mat2_text("[1, 0; 0]"), ConfigError);
  CHECK_THROWS_AS(parse_mat2_text("[sqrt3, 0; 0, 1]"), ConfigError);

  CHECK(parse_piecewise_text("(-inf, inf) [1, 0; 0, 1]").is_identity());
  CHECK(parse_piecewise_text("(-inf, 0) [1,0;0,1]; (0, inf) [1,0;0,1]")
            .is_identity());

  const PiecewiseMap two =
      parse_piecewise_text("(-inf, 0) [1, 0; 0, 1]; (0, inf) [2, 0; 0, 1/2]");
  const PiecewiseMap expected = pw_normalize(PiecewiseMap(
      {RealAlgebraic(rat(0))},
      {Mat2::identity(), Mat2(q(2), q(0), q(0), q(1, 2))}));
  CHECK(pw_equal(two, expected));

  CHECK(contains(
      config_what([] { parse_piecewise_text("(0, inf) [1,0;0,1]"); }),
      "must start at -inf"));
  CHECK(contains(
      config_what([] {
        parse_piecewise_text("(-inf, 0) [1,0;0,1]; (1, inf) [1,0;0,1]");
      }),
      "do not share an end"));
  CHECK(contains(
      config_what([] {
        parse_piecewise_text("(-inf, 0) [1,0;0,1]; (0, inf) [1,1;0,1]");
      }),
      "discontinuity"));
  CHECK_THROWS_AS(parse_piecewise_text("(-inf, sqrt2) [1,0;0,1]; (sqrt2, inf) [1,0;0,1]"),
                  ConfigError);
}

TEST_CASE("word files roundtrip line by line") {
  const std::vector<std::string> words = {"aaBA", "baBB", "A", "bbbb"};
  CHECK(words_to_text(words) == "aaBA\nbaBB\nA\nbbbb\n");
  CHECK(parse_words_text(words_to_text(words), "w.txt") == words);
  CHECK(parse_words_text("aaBA\r\n\nbaBB\n", "w.txt") ==
        std::vector<std::string>{"aaBA", "baBB"});
  CHECK(contains(config_what([] { parse_words_text("aa\nax\n", "w.txt"); }),
                 "w.txt line 2: invalid character 'x'"));
}

TEST_CASE("file helpers and campaign reports are byte-deterministic") {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "paradec_serial_case";
  const std::string path = (dir / "nested" / "value.json").string();
  write_text_file(path, dump_json(to_json(rat(22, 7))));
  CHECK(parse_rational(parse_json_text(read_text_file(path), path), path) ==
        rat(22, 7));
  CHECK(contains(config_what([&] { read_text_file((dir / "absent").string()); }),
                 "cannot open file"));
  CHECK(contains(config_what([&] { parse_json_text("{oops", "bad.json"); }),
                 "bad.json: "));
  std::filesystem::remove_all(dir);

  PipelineConfig cfg;
  cfg.plan.exhaustive = {{1, 1}};
  cfg.plan.random = {{10, 3, 2}};
  cfg.plan.seed = 99;
  const std::string once = dump_json(to_json(run_campaign(cfg)));
  const std::string twice = dump_json(to_json(run_campaign(cfg)));
  CHECK(once == twice);

  const json report = parse_json_text(once, "report");
  CHECK(report.at("instances") == 26 + 10);
  CHECK(report.at("search").at("words").at("g_words")[0] == "aaBA");
  CHECK(report.at("tset").at("elements").size() == 12);
  CHECK(report.at("cert").at("delta") == "1/195");
  CHECK(report.at("failures").empty());
}
