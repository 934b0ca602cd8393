/**
 * @file serial.cpp
 * @brief JSON emitters and strict path-diagnosed parsers, the quick-entry
 *        text grammar, word files, and whole-file helpers.
 */
#include "paradec/serial.hpp"

#include <cctype>
#include <climits>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <utility>

namespace paradec {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Schema plumbing: every extractor names the offending node on failure.
// ---------------------------------------------------------------------------

/// Object with exactly the listed keys: unknown and missing fields are both
/// schema violations.
void check_object(const json& j, const std::string& path,
                  std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ConfigError(path + ": expected an object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : keys) known = known || item.key() == k;
    if (!known) throw ConfigError(path + "." + item.key() + ": unknown field");
  }
  for (const char* k : keys)
    if (!j.contains(k)) throw ConfigError(path + "." + k + ": missing field");
}

const json& check_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path + ": expected an array");
  return j;
}

std::string string_at(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path + ": expected a string");
  return j.get<std::string>();
}

std::uint64_t u64_at(const json& j, const std::string& path) {
  if (!j.is_number_unsigned())
    throw ConfigError(path + ": expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

std::size_t usize_at(const json& j, const std::string& path) {
  return static_cast<std::size_t>(u64_at(j, path));
}

int int_at(const json& j, const std::string& path) {
  if (!j.is_number_integer() && !j.is_number_unsigned())
    throw ConfigError(path + ": expected an integer");
  const auto v = j.get<long long>();
  if (v < INT_MIN || v > INT_MAX) throw ConfigError(path + ": integer out of range");
  return static_cast<int>(v);
}

std::string elem_path(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

double approx_double(const Rational& lo, const Rational& hi) {
  const Rational mid = (lo + hi) / 2;
  return mid.get_d();
}

}  // namespace

// ---------------------------------------------------------------------------
// Files and raw JSON
// ---------------------------------------------------------------------------

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

json parse_json_text(const std::string& text, const std::string& path) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open file");
  std::ostringstream out;
  out << in.rdbuf();
  if (in.bad()) throw ConfigError(path + ": read failed");
  return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  if (ec) throw ConfigError(path + ": cannot create parent directory: " + ec.message());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError(path + ": cannot open file for writing");
  out << text;
  out.flush();
  if (!out.good()) throw ConfigError(path + ": write failed");
}

// ---------------------------------------------------------------------------
// Rational, QSqrt2, RealAlgebraic
// ---------------------------------------------------------------------------

json to_json(const Rational& q) { return rat_to_string(q); }

Rational parse_rational(const json& j, const std::string& path) {
  const std::string text = string_at(j, path);
  try {
    return rat_parse(text);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

json to_json(const QSqrt2& x) {
  return json{{"r", to_json(x.r())}, {"s", to_json(x.s())}};
}

QSqrt2 parse_qsqrt2(const json& j, const std::string& path) {
  check_object(j, path, {"r", "s"});
  return QSqrt2(parse_rational(j.at("r"), path + ".r"),
                parse_rational(j.at("s"), path + ".s"));
}

json to_json(const RealAlgebraic& x) {
  json poly = json::array();
  for (const Rational& c : x.poly().coeffs()) poly.push_back(to_json(c));
  return json{{"poly", std::move(poly)}, {"lo", to_json(x.lo())}, {"hi", to_json(x.hi())}};
}

RealAlgebraic parse_real_algebraic(const json& j, const std::string& path) {
  check_object(j, path, {"poly", "lo", "hi"});
  const json& arr = check_array(j.at("poly"), path + ".poly");
  std::vector<Rational> coeffs;
  coeffs.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i)
    coeffs.push_back(parse_rational(arr[i], elem_path(path + ".poly", i)));
  const Rational lo = parse_rational(j.at("lo"), path + ".lo");
  const Rational hi = parse_rational(j.at("hi"), path + ".hi");
  try {
    return RealAlgebraic::from_parts(Poly(std::move(coeffs)), lo, hi);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Mat2, PiecewiseMap, IntervalSet
// ---------------------------------------------------------------------------

json to_json(const Mat2& m) {
  return json{{"a", to_json(m.a())},
              {"b", to_json(m.b())},
              {"c", to_json(m.c())},
              {"d", to_json(m.d())}};
}

Mat2 parse_mat2(const json& j, const std::string& path) {
  check_object(j, path, {"a", "b", "c", "d"});
  const QSqrt2 a = parse_qsqrt2(j.at("a"), path + ".a");
  const QSqrt2 b = parse_qsqrt2(j.at("b"), path + ".b");
  const QSqrt2 c = parse_qsqrt2(j.at("c"), path + ".c");
  const QSqrt2 d = parse_qsqrt2(j.at("d"), path + ".d");
  try {
    return Mat2(a, b, c, d);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

json to_json(const PiecewiseMap& pm) {
  json breaks = json::array();
  for (const RealAlgebraic& b : pm.breakpoints()) breaks.push_back(to_json(b));
  json pieces = json::array();
  for (const Mat2& p : pm.pieces()) pieces.push_back(to_json(p));
  return json{{"breakpoints", std::move(breaks)}, {"pieces", std::move(pieces)}};
}

PiecewiseMap parse_piecewise(const json& j, const std::string& path) {
  check_object(j, path, {"breakpoints", "pieces"});
  const json& jb = check_array(j.at("breakpoints"), path + ".breakpoints");
  const json& jp = check_array(j.at("pieces"), path + ".pieces");
  std::vector<RealAlgebraic> breaks;
  breaks.reserve(jb.size());
  for (std::size_t i = 0; i < jb.size(); ++i)
    breaks.push_back(parse_real_algebraic(jb[i], elem_path(path + ".breakpoints", i)));
  std::vector<Mat2> pieces;
  pieces.reserve(jp.size());
  for (std::size_t i = 0; i < jp.size(); ++i)
    pieces.push_back(parse_mat2(jp[i], elem_path(path + ".pieces", i)));
  // The constructor checks the structural invariants; normalization checks
  // the semantic ones (continuity, pole-free cells, fixed infinity).  Both
  // kinds of failure are bad input here, so MathError converts.
  try {
    return pw_normalize(PiecewiseMap(std::move(breaks), std::move(pieces)));
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  } catch (const MathError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

json to_json(const IntervalSet& s) {
  json arr = json::array();
  for (const Interval& iv : s.intervals())
    arr.push_back(json{{"lo", to_json(iv.lo)}, {"hi", to_json(iv.hi)}});
  return json{{"intervals", std::move(arr)}};
}

IntervalSet parse_interval_set(const json& j, const std::string& path) {
  check_object(j, path, {"intervals"});
  const json& arr = check_array(j.at("intervals"), path + ".intervals");
  std::vector<Interval> pieces;
  pieces.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = elem_path(path + ".intervals", i);
    check_object(arr[i], p, {"lo", "hi"});
    pieces.push_back(Interval{parse_real_algebraic(arr[i].at("lo"), p + ".lo"),
                              parse_real_algebraic(arr[i].at("hi"), p + ".hi")});
  }
  return IntervalSet::from_pieces(std::move(pieces));
}

// ---------------------------------------------------------------------------
// DistortionCert, GeneratorPair
// ---------------------------------------------------------------------------

json to_json(const DistortionCert& c) {
  return json{{"i_lo", to_json(c.i_lo)},         {"i_hi", to_json(c.i_hi)},
              {"epsilon", to_json(c.epsilon)},   {"delta", to_json(c.delta)},
              {"radius", to_json(c.radius)},     {"deriv_lo", to_json(c.deriv_lo)},
              {"deriv_hi", to_json(c.deriv_hi)}};
}

DistortionCert parse_distortion_cert(const json& j, const std::string& path) {
  check_object(j, path,
               {"i_lo", "i_hi", "epsilon", "delta", "radius", "deriv_lo", "deriv_hi"});
  DistortionCert c;
  c.i_lo = parse_rational(j.at("i_lo"), path + ".i_lo");
  c.i_hi = parse_rational(j.at("i_hi"), path + ".i_hi");
  c.epsilon = parse_rational(j.at("epsilon"), path + ".epsilon");
  c.delta = parse_rational(j.at("delta"), path + ".delta");
  c.radius = parse_rational(j.at("radius"), path + ".radius");
  c.deriv_lo = parse_rational(j.at("deriv_lo"), path + ".deriv_lo");
  c.deriv_hi = parse_rational(j.at("deriv_hi"), path + ".deriv_hi");
  if (!(c.i_lo < c.i_hi)) throw ConfigError(path + ".i_hi: interval is empty");
  if (!(c.epsilon > 0 && c.epsilon < 1))
    throw ConfigError(path + ".epsilon: must lie in (0, 1)");
  if (!(c.delta > 0 && c.delta.get_num() == 1))
    throw ConfigError(path + ".delta: must be of the form 1/n");
  const Rational alo = rat_abs(c.i_lo);
  const Rational ahi = rat_abs(c.i_hi);
  const Rational need = alo > ahi ? alo : ahi;
  if (c.radius < need)
    throw ConfigError(path + ".radius: does not cover the interval");
  const Rational reach = (c.radius + 1) * c.delta;
  if (!(reach < 1))
    throw ConfigError(path + ".delta: (radius + 1) * delta must stay below 1");
  const Rational up = 1 + reach;
  const Rational down = 1 - reach;
  if (c.deriv_lo != Rational(1) / (up * up))
    throw ConfigError(path + ".deriv_lo: does not equal (1 + (radius+1)*delta)^-2");
  if (c.deriv_hi != Rational(1) / (down * down))
    throw ConfigError(path + ".deriv_hi: does not equal (1 - (radius+1)*delta)^-2");
  return c;
}

json to_json(const GeneratorPair& gp) {
  return json{{"a", to_json(gp.a)}, {"b", to_json(gp.b)}, {"provenance", gp.provenance}};
}

GeneratorPair parse_generator_pair(const json& j, const std::string& path) {
  check_object(j, path, {"a", "b", "provenance"});
  Mat2 a = parse_mat2(j.at("a"), path + ".a");
  Mat2 b = parse_mat2(j.at("b"), path + ".b");
  return GeneratorPair(std::move(a), std::move(b),
                       string_at(j.at("provenance"), path + ".provenance"));
}

// ---------------------------------------------------------------------------
// FiniteSubset, TranslatingSet
// ---------------------------------------------------------------------------

json to_json(const FiniteSubset& u) {
  json els = json::array();
  for (const PiecewiseMap& m : u.elements()) els.push_back(to_json(m));
  json words = json::array();
  for (const std::string& w : u.source_words()) words.push_back(w);
  return json{{"elements", std::move(els)}, {"source_words", std::move(words)}};
}

FiniteSubset parse_finite_subset(const json& j, const std::string& path) {
  check_object(j, path, {"elements", "source_words"});
  const json& els = check_array(j.at("elements"), path + ".elements");
  const json& jw = check_array(j.at("source_words"), path + ".source_words");
  std::vector<PiecewiseMap> maps;
  maps.reserve(els.size());
  for (std::size_t i = 0; i < els.size(); ++i)
    maps.push_back(parse_piecewise(els[i], elem_path(path + ".elements", i)));
  std::vector<std::string> words;
  words.reserve(jw.size());
  for (std::size_t i = 0; i < jw.size(); ++i)
    words.push_back(string_at(jw[i], elem_path(path + ".source_words", i)));
  try {
    return FiniteSubset(std::move(maps), std::move(words));
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

json to_json(const TranslatingSet& t) {
  json els = json::array();
  for (const PiecewiseMap& m : t.elements()) els.push_back(to_json(m));
  json words = json::array();
  for (const std::string& w : t.source_words()) words.push_back(w);
  return json{{"elements", std::move(els)},
              {"source_words", std::move(words)},
              {"gens", to_json(t.gens())},
              {"i_lo", to_json(t.i_lo())},
              {"i_hi", to_json(t.i_hi())},
              {"delta", to_json(t.delta())},
              {"epsilon", to_json(t.epsilon())}};
}

TranslatingSet parse_translating_set(const json& j, const std::string& path) {
  check_object(j, path,
               {"elements", "source_words", "gens", "i_lo", "i_hi", "delta", "epsilon"});
  const json& els = check_array(j.at("elements"), path + ".elements");
  const json& jw = check_array(j.at("source_words"), path + ".source_words");
  std::vector<PiecewiseMap> maps;
  maps.reserve(els.size());
  for (std::size_t i = 0; i < els.size(); ++i)
    maps.push_back(parse_piecewise(els[i], elem_path(path + ".elements", i)));
  std::vector<std::string> words;
  words.reserve(jw.size());
  for (std::size_t i = 0; i < jw.size(); ++i)
    words.push_back(string_at(jw[i], elem_path(path + ".source_words", i)));
  const GeneratorPair gens = parse_generator_pair(j.at("gens"), path + ".gens");
  const Rational i_lo = parse_rational(j.at("i_lo"), path + ".i_lo");
  const Rational i_hi = parse_rational(j.at("i_hi"), path + ".i_hi");
  const Rational delta = parse_rational(j.at("delta"), path + ".delta");
  const Rational epsilon = parse_rational(j.at("epsilon"), path + ".epsilon");
  // The constructor re-verifies every structural invariant, including exact
  // agreement of each element with its source word over the interval.
  try {
    return TranslatingSet(std::move(maps), std::move(words), gens, i_lo, i_hi, delta,
                          epsilon);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// MatchingCertificate: embedded element table plus serial-number edges
// ---------------------------------------------------------------------------

json to_json(const MatchingCertificate& cert) {
  std::vector<const PiecewiseMap*> table;
  std::unordered_map<std::string, std::size_t> serial_of;
  const auto intern = [&](const PiecewiseMap& m) -> std::size_t {
    const auto [it, fresh] = serial_of.emplace(m.key(), table.size());
    if (fresh) table.push_back(&m);
    return it->second;
  };
  const auto subset_json = [&](const FiniteSubset& u) {
    json members = json::array();
    for (const PiecewiseMap& m : u.elements())
      members.push_back(static_cast<std::uint64_t>(intern(m)));
    json words = json::array();
    for (const std::string& w : u.source_words()) words.push_back(w);
    return json{{"members", std::move(members)}, {"source_words", std::move(words)}};
  };
  json u1 = subset_json(cert.u1);
  json u2 = subset_json(cert.u2);
  json edges = json::array();
  for (const MatchingEdge& e : cert.edges)
    edges.push_back(json{{"color", e.color},
                         {"left", static_cast<std::uint64_t>(intern(e.left))},
                         {"translator", static_cast<std::uint64_t>(intern(e.translator))},
                         {"target", static_cast<std::uint64_t>(intern(e.target))}});
  json els = json::array();
  for (const PiecewiseMap* m : table) els.push_back(to_json(*m));
  return json{{"elements", std::move(els)},
              {"u1", std::move(u1)},
              {"u2", std::move(u2)},
              {"edges", std::move(edges)}};
}

MatchingCertificate parse_matching_certificate(const json& j, const std::string& path) {
  check_object(j, path, {"elements", "u1", "u2", "edges"});
  const json& els = check_array(j.at("elements"), path + ".elements");
  std::vector<PiecewiseMap> table;
  table.reserve(els.size());
  for (std::size_t i = 0; i < els.size(); ++i)
    table.push_back(parse_piecewise(els[i], elem_path(path + ".elements", i)));
  const auto serial_at = [&](const json& node, const std::string& p) -> std::size_t {
    const std::size_t s = usize_at(node, p);
    if (s >= table.size())
      throw ConfigError(p + ": serial " + std::to_string(s) +
                        " exceeds the element table");
    return s;
  };
  const auto parse_subset = [&](const json& node, const std::string& p) {
    check_object(node, p, {"members", "source_words"});
    const json& jm = check_array(node.at("members"), p + ".members");
    const json& jw = check_array(node.at("source_words"), p + ".source_words");
    std::vector<PiecewiseMap> maps;
    maps.reserve(jm.size());
    for (std::size_t i = 0; i < jm.size(); ++i)
      maps.push_back(table[serial_at(jm[i], elem_path(p + ".members", i))]);
    std::vector<std::string> words;
    words.reserve(jw.size());
    for (std::size_t i = 0; i < jw.size(); ++i)
      words.push_back(string_at(jw[i], elem_path(p + ".source_words", i)));
    try {
      return FiniteSubset(std::move(maps), std::move(words));
    } catch (const ConfigError& e) {
      throw ConfigError(p + ": " + e.what());
    }
  };
  MatchingCertificate cert;
  cert.u1 = parse_subset(j.at("u1"), path + ".u1");
  cert.u2 = parse_subset(j.at("u2"), path + ".u2");
  const json& edges = check_array(j.at("edges"), path + ".edges");
  cert.edges.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string p = elem_path(path + ".edges", i);
    check_object(edges[i], p, {"color", "left", "translator", "target"});
    cert.edges.push_back(
        MatchingEdge{int_at(edges[i].at("color"), p + ".color"),
                     table[serial_at(edges[i].at("left"), p + ".left")],
                     table[serial_at(edges[i].at("translator"), p + ".translator")],
                     table[serial_at(edges[i].at("target"), p + ".target")]});
  }
  return cert;
}

// ---------------------------------------------------------------------------
// PipelineConfig
// ---------------------------------------------------------------------------

json to_json(const PipelineConfig& cfg) {
  json exhaustive = json::array();
  for (const ExhaustiveStage& st : cfg.plan.exhaustive)
    exhaustive.push_back(json{{"radius", st.radius},
                              {"max_size", static_cast<std::uint64_t>(st.max_size)}});
  json random = json::array();
  for (const RandomStage& st : cfg.plan.random)
    random.push_back(json{{"count", static_cast<std::uint64_t>(st.count)},
                          {"max_size", static_cast<std::uint64_t>(st.max_size)},
                          {"word_len", st.word_len}});
  return json{{"i_lo", to_json(cfg.i_lo)},
              {"i_hi", to_json(cfg.i_hi)},
              {"epsilon", to_json(cfg.epsilon)},
              {"pair_name", cfg.pair_name},
              {"max_core_len", cfg.max_core_len},
              {"plan", json{{"exhaustive", std::move(exhaustive)},
                            {"random", std::move(random)},
                            {"seed", cfg.plan.seed}}}};
}

PipelineConfig parse_pipeline_config(const json& j, const std::string& path) {
  check_object(j, path, {"i_lo", "i_hi", "epsilon", "pair_name", "max_core_len", "plan"});
  PipelineConfig cfg;
  cfg.i_lo = parse_rational(j.at("i_lo"), path + ".i_lo");
  cfg.i_hi = parse_rational(j.at("i_hi"), path + ".i_hi");
  cfg.epsilon = parse_rational(j.at("epsilon"), path + ".epsilon");
  cfg.pair_name = string_at(j.at("pair_name"), path + ".pair_name");
  cfg.max_core_len = int_at(j.at("max_core_len"), path + ".max_core_len");
  if (!(cfg.i_lo < cfg.i_hi)) throw ConfigError(path + ".i_hi: interval is empty");
  if (!(cfg.epsilon > 0 && cfg.epsilon < 1))
    throw ConfigError(path + ".epsilon: must lie in (0, 1)");
  if (cfg.max_core_len < 0)
    throw ConfigError(path + ".max_core_len: must be nonnegative");
  const json& plan = j.at("plan");
  const std::string plan_path = path + ".plan";
  check_object(plan, plan_path, {"exhaustive", "random", "seed"});
  cfg.plan.seed = u64_at(plan.at("seed"), plan_path + ".seed");
  const json& je = check_array(plan.at("exhaustive"), plan_path + ".exhaustive");
  cfg.plan.exhaustive.clear();
  for (std::size_t i = 0; i < je.size(); ++i) {
    const std::string p = elem_path(plan_path + ".exhaustive", i);
    check_object(je[i], p, {"radius", "max_size"});
    ExhaustiveStage st;
    st.radius = int_at(je[i].at("radius"), p + ".radius");
    st.max_size = usize_at(je[i].at("max_size"), p + ".max_size");
    if (st.radius < 0) throw ConfigError(p + ".radius: must be nonnegative");
    cfg.plan.exhaustive.push_back(st);
  }
  const json& jr = check_array(plan.at("random"), plan_path + ".random");
  cfg.plan.random.clear();
  for (std::size_t i = 0; i < jr.size(); ++i) {
    const std::string p = elem_path(plan_path + ".random", i);
    check_object(jr[i], p, {"count", "max_size", "word_len"});
    RandomStage st;
    st.count = usize_at(jr[i].at("count"), p + ".count");
    st.max_size = usize_at(jr[i].at("max_size"), p + ".max_size");
    st.word_len = int_at(jr[i].at("word_len"), p + ".word_len");
    if (st.max_size == 0) throw ConfigError(p + ".max_size: must be at least 1");
    if (st.word_len < 1) throw ConfigError(p + ".word_len: must be at least 1");
    cfg.plan.random.push_back(st);
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Report emitters
// ---------------------------------------------------------------------------

json to_json(const RadicalSum& s) {
  const auto [lo, hi] = s.approx(Rational(1, 1000000000));
  return json{{"exact", s.str()}, {"approx", approx_double(lo, hi)}};
}

json to_json(const SearchStats& s) {
  return json{{"cores_enumerated", s.cores_enumerated},
              {"rejected_form", s.rejected_form},
              {"rejected_dist", s.rejected_dist},
              {"rejected_pole", s.rejected_pole},
              {"rejected_not_hyperbolic", s.rejected_not_hyperbolic},
              {"rejected_not_flanking", s.rejected_not_flanking},
              {"rejected_collision", s.rejected_collision}};
}

json to_json(const WordSearchResult& r) {
  json j{{"found", r.found},
         {"note", r.note},
         {"g_stats", to_json(r.g_stats)},
         {"h_stats", to_json(r.h_stats)}};
  if (r.found) {
    j["words"] = json{{"g_words", r.words.g_words},
                      {"h_words", r.words.h_words},
                      {"g_core", r.words.g_core},
                      {"h_core", r.words.h_core}};
  } else {
    j["words"] = nullptr;
  }
  return j;
}

json to_json(const NoRelationResult& r) {
  return json{{"certified", r.certified},
              {"counterexample", r.counterexample},
              {"words_checked", r.words_checked}};
}

json to_json(const DistortionCheck& r) {
  json j{{"pass", r.pass},
         {"ratio_lo", to_json(r.ratio_lo)},
         {"ratio_hi", to_json(r.ratio_hi)},
         {"ratio_approx", approx_double(r.ratio_lo, r.ratio_hi)}};
  j["ratio"] = r.ratio ? to_json(*r.ratio) : json(nullptr);
  return j;
}

json to_json(const PigeonholeWitness& w) {
  json indices = json::array();
  for (int i : w.indices) indices.push_back(i);
  json coverage = json::array();
  for (int i : w.coverage) coverage.push_back(i);
  return json{{"cell_union", to_json(w.cell_union)},
              {"indices", std::move(indices)},
              {"coverage", std::move(coverage)},
              {"total", to_json(w.total)},
              {"gate", to_json(w.gate)}};
}

json to_json(const ValidationReport& r) {
  json violations = json::array();
  for (const std::string& v : r.violations) violations.push_back(v);
  return json{{"ok", r.ok()}, {"violations", std::move(violations)}};
}

json to_json(const MarriageReport& r) {
  json witness = json::array();
  for (const ProductWitness& w : r.witness)
    witness.push_back(json{{"s_index", static_cast<std::uint64_t>(w.s_index)},
                           {"u_index", static_cast<std::uint64_t>(w.u_index)},
                           {"product", to_json(w.product)}});
  return json{{"lhs", static_cast<std::uint64_t>(r.lhs)},
              {"rhs", static_cast<std::uint64_t>(r.rhs)},
              {"pass", r.pass},
              {"witness", std::move(witness)}};
}

json to_json(const EgsReport& r) {
  return json{{"lhs", static_cast<std::uint64_t>(r.lhs)},
              {"mid", static_cast<std::uint64_t>(r.mid)},
              {"rhs", static_cast<std::uint64_t>(r.rhs)},
              {"identity_holds", r.identity_holds},
              {"inequality_holds", r.inequality_holds},
              {"pass", r.pass}};
}

json to_json(const MatchingOutcome& o) {
  json j{{"matched", o.matched},
         {"violating_u1", to_json(o.violating_u1)},
         {"violating_u2", to_json(o.violating_u2)},
         {"violator_size", static_cast<std::uint64_t>(o.violator_size)},
         {"neighborhood_size", static_cast<std::uint64_t>(o.neighborhood_size)}};
  j["certificate"] = o.certificate ? to_json(*o.certificate) : json(nullptr);
  return j;
}

json to_json(const SubsetOutcome& o) {
  return json{{"id", static_cast<std::uint64_t>(o.id)},
              {"stage", o.stage},
              {"size", static_cast<std::uint64_t>(o.size)},
              {"lhs", static_cast<std::uint64_t>(o.lhs)},
              {"rhs", static_cast<std::uint64_t>(o.rhs)},
              {"pass", o.marriage_pass},
              {"matched", o.matched},
              {"certificate_valid", o.certificate_valid},
              {"seed", o.seed},
              {"timing", o.timing}};
}

json to_json(const CampaignFailure& f) {
  return json{{"subset_id", static_cast<std::uint64_t>(f.subset_id)},
              {"what", f.what},
              {"u", to_json(f.u)},
              {"report", to_json(f.report)}};
}

json to_json(const CampaignReport& r) {
  json outcomes = json::array();
  for (const SubsetOutcome& o : r.outcomes) outcomes.push_back(to_json(o));
  json failures = json::array();
  for (const CampaignFailure& f : r.failures) failures.push_back(to_json(f));
  json j{{"cert", to_json(r.cert)},
         {"search", to_json(r.search)},
         {"outcomes", std::move(outcomes)},
         {"failures", std::move(failures)},
         {"instances", static_cast<std::uint64_t>(r.instances)},
         {"marriage_passes", static_cast<std::uint64_t>(r.marriage_passes)},
         {"matchings_found", static_cast<std::uint64_t>(r.matchings_found)},
         {"certificates_valid", static_cast<std::uint64_t>(r.certificates_valid)}};
  j["tset"] = r.tset ? to_json(*r.tset) : json(nullptr);
  return j;
}

// ---------------------------------------------------------------------------
// Quick-entry text grammar
// ---------------------------------------------------------------------------

namespace {

std::string strip_whitespace(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

/// Splits on `sep` outside any '()' or '[]' nesting.
std::vector<std::string> split_top_level(const std::string& s, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

/// Coefficient of a "[c*]sqrt2" term (sign handled by the caller).
Rational sqrt2_coefficient(const std::string& term, const std::string& where) {
  if (term == "sqrt2") return Rational(1);
  const std::string suffix = "*sqrt2";
  if (term.size() > suffix.size() &&
      term.compare(term.size() - suffix.size(), suffix.size(), suffix) == 0)
    return rat_parse(term.substr(0, term.size() - suffix.size()));
  throw ConfigError(where + ": expected a sqrt2 term, got '" + term + "'");
}

/// Whitespace-free q literal: Rational, sqrt2 term, or "rational±sqrt2 term".
QSqrt2 parse_q_literal(const std::string& s, const std::string& where) {
  if (s.empty()) throw ConfigError(where + ": empty matrix entry");
  if (s.find("sqrt2") == std::string::npos) return QSqrt2(rat_parse(s));
  // Locate the sign separating the rational part from the sqrt2 term; a sign
  // at position 0 belongs to the leading term.
  std::size_t sep = std::string::npos;
  for (std::size_t i = 1; i < s.size() && sep == std::string::npos; ++i)
    if (s[i] == '+' || s[i] == '-') sep = i;
  if (sep == std::string::npos) {
    const bool neg = s[0] == '-';
    const Rational c = sqrt2_coefficient(neg ? s.substr(1) : s, where);
    return QSqrt2(Rational(0), neg ? Rational(-c) : c);
  }
  const std::string left = s.substr(0, sep);
  if (left.find("sqrt2") != std::string::npos)
    throw ConfigError(where + ": the rational part must precede the sqrt2 term in '" +
                      s + "'");
  const Rational r = rat_parse(left);
  const Rational c = sqrt2_coefficient(s.substr(sep + 1), where);
  return QSqrt2(r, s[sep] == '-' ? Rational(-c) : c);
}

/// Whitespace-free "[q,q;q,q]" body.
Mat2 parse_matrix_literal(const std::string& s, const std::string& where) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw ConfigError(where + ": expected a matrix '[a, b; c, d]', got '" + s + "'");
  const std::vector<std::string> rows =
      split_top_level(s.substr(1, s.size() - 2), ';');
  if (rows.size() != 2) throw ConfigError(where + ": matrix needs exactly two rows");
  std::vector<QSqrt2> entries;
  for (const std::string& row : rows) {
    const std::vector<std::string> cells = split_top_level(row, ',');
    if (cells.size() != 2)
      throw ConfigError(where + ": matrix row needs exactly two entries");
    for (const std::string& cell : cells) entries.push_back(parse_q_literal(cell, where));
  }
  try {
    return Mat2(entries[0], entries[1], entries[2], entries[3]);
  } catch (const ConfigError& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

struct IntervalEnd {
  int kind = 0;  ///< -1 = -inf, 0 = finite, +1 = inf
  Rational value;
};

IntervalEnd parse_interval_end(const std::string& s, const std::string& where) {
  if (s == "-inf") return {-1, Rational(0)};
  if (s == "inf" || s == "+inf") return {+1, Rational(0)};
  try {
    return {0, rat_parse(s)};
  } catch (const ConfigError& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

}  // namespace

Mat2 parse_mat2_text(const std::string& text) {
  return parse_matrix_literal(strip_whitespace(text), "matrix text");
}

PiecewiseMap parse_piecewise_text(const std::string& text) {
  const std::string flat = strip_whitespace(text);
  const std::vector<std::string> clauses = split_top_level(flat, ';');
  std::vector<IntervalEnd> los, his;
  std::vector<Mat2> pieces;
  for (std::size_t k = 0; k < clauses.size(); ++k) {
    const std::string where = "piecewise text clause " + std::to_string(k);
    const std::string& clause = clauses[k];
    if (clause.empty() || clause.front() != '(')
      throw ConfigError(where + ": expected '(lo, hi) [a, b; c, d]'");
    const std::size_t close = clause.find(')');
    if (close == std::string::npos)
      throw ConfigError(where + ": unterminated interval");
    const std::vector<std::string> ends =
        split_top_level(clause.substr(1, close - 1), ',');
    if (ends.size() != 2)
      throw ConfigError(where + ": interval needs exactly two ends");
    los.push_back(parse_interval_end(ends[0], where));
    his.push_back(parse_interval_end(ends[1], where));
    pieces.push_back(parse_matrix_literal(clause.substr(close + 1), where));
  }
  if (los.front().kind != -1)
    throw ConfigError("piecewise text: the first interval must start at -inf");
  if (his.back().kind != 1)
    throw ConfigError("piecewise text: the last interval must end at inf");
  std::vector<RealAlgebraic> breaks;
  breaks.reserve(pieces.size() - 1);
  for (std::size_t k = 0; k + 1 < pieces.size(); ++k) {
    if (his[k].kind != 0 || los[k + 1].kind != 0 || his[k].value != los[k + 1].value)
      throw ConfigError("piecewise text: clauses " + std::to_string(k) + " and " +
                        std::to_string(k + 1) + " do not share an end");
    breaks.emplace_back(his[k].value);
  }
  try {
    return pw_normalize(PiecewiseMap(std::move(breaks), std::move(pieces)));
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("piecewise text: ") + e.what());
  } catch (const MathError& e) {
    throw ConfigError(std::string("piecewise text: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Word files
// ---------------------------------------------------------------------------

std::string words_to_text(const std::vector<std::string>& words) {
  std::string out;
  for (const std::string& w : words) {
    out += w;
    out += '\n';
  }
  return out;
}

std::vector<std::string> parse_words_text(const std::string& text,
                                          const std::string& path) {
  std::vector<std::string> words;
  std::istringstream in(text);
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    for (char c : line)
      if (c != 'a' && c != 'A' && c != 'b' && c != 'B')
        throw ConfigError(path + " line " + std::to_string(n) +
                          ": invalid character '" + std::string(1, c) +
                          "' in word (alphabet is a, A, b, B)");
    words.push_back(line);
  }
  return words;
}

}  // namespace paradec
