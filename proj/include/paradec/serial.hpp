/**
 * @file serial.hpp
 * @brief JSON serialization for every exported type, strict parsers with
 *        path-carrying diagnostics, a quick-entry text grammar for matrices
 *        and piecewise maps, and one-word-per-line word files.
 *
 * Emitters return nlohmann::json values; nlohmann keeps object keys sorted,
 * so dump_json output is byte-identical for equal inputs.  All numbers that
 * carry mathematical content are exact strings ("p/q" rationals, polynomial
 * coefficient lists); the only floating-point fields are report columns
 * explicitly suffixed `_approx`.
 *
 * Parsers are strict: wrong JSON types, missing fields, unknown fields, and
 * violated value invariants all raise ConfigError whose message starts with
 * the path of the offending node (e.g. "tset.elements[3].pieces[0].a.r").
 * Parsing re-runs the owning type's validating constructor, so a parsed
 * value satisfies every invariant the in-memory type guarantees.
 *
 * Formats:
 *   Rational        "p/q" with q > 0 and gcd(|p|, q) = 1; bare integers
 *                   accepted on input as p/1
 *   QSqrt2          {"r": Rational, "s": Rational}        (value r + s*sqrt2)
 *   RealAlgebraic   {"poly": [Rational...], "lo": Rational, "hi": Rational}
 *                   (coefficients low order first; open isolating interval)
 *   Mat2            {"a","b","c","d": QSqrt2} in canonical sign form
 *   PiecewiseMap    {"breakpoints": [RealAlgebraic...], "pieces": [Mat2...]}
 *   IntervalSet     {"intervals": [{"lo","hi": RealAlgebraic}...]}
 *   DistortionCert  all seven constants as Rationals; the derived fields
 *                   are recomputed on parse and must match
 *   GeneratorPair   {"a","b": Mat2, "provenance": string}
 *   FiniteSubset    {"elements": [PiecewiseMap...], "source_words": [string...]}
 *   TranslatingSet  {"elements", "source_words", "gens", "i_lo", "i_hi",
 *                   "delta", "epsilon"}; the constructor re-verifies the
 *                   agreement invariants on parse
 *   MatchingCertificate  an embedded element table plus colored edges that
 *                   reference elements by serial number (table index)
 *   PipelineConfig  every field, including the full campaign plan
 *
 * Quick-entry text grammar (parse only):
 *   map      := clause (';' clause)*
 *   clause   := '(' end ',' end ')' matrix
 *   end      := '-inf' | 'inf' | Rational
 *   matrix   := '[' q ',' q ';' q ',' q ']'
 *   q        := Rational | ['-'][Rational '*']'sqrt2'
 *               | Rational ('+'|'-') [Rational '*']'sqrt2'
 * Whitespace is ignored.  Consecutive clauses must chain (each upper end
 * equals the next lower end), the first lower end is -inf and the last
 * upper end is inf; the shared finite ends become the breakpoints.
 */
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "paradec/distortion.hpp"
#include "paradec/interval_set.hpp"
#include "paradec/marriage.hpp"
#include "paradec/mat2.hpp"
#include "paradec/piecewise.hpp"
#include "paradec/pipeline.hpp"
#include "paradec/qsqrt2.hpp"
#include "paradec/rational.hpp"
#include "paradec/real_algebraic.hpp"
#include "paradec/word.hpp"

namespace paradec {

// ---------------------------------------------------------------------------
// Files and raw JSON
// ---------------------------------------------------------------------------

/// Canonical text form: two-space indent, sorted keys, trailing newline.
std::string dump_json(const nlohmann::json& j);

/// Parses raw JSON text; syntax errors become ConfigError tagged with path.
nlohmann::json parse_json_text(const std::string& text, const std::string& path);

/// Whole-file read; a missing or unreadable file is a ConfigError.
std::string read_text_file(const std::string& path);

/// Whole-file write, creating parent directories; failures are ConfigError.
void write_text_file(const std::string& path, const std::string& text);

// ---------------------------------------------------------------------------
// Emitters (roundtrip types)
// ---------------------------------------------------------------------------

nlohmann::json to_json(const Rational& q);
nlohmann::json to_json(const QSqrt2& x);
nlohmann::json to_json(const RealAlgebraic& x);
nlohmann::json to_json(const Mat2& m);
nlohmann::json to_json(const PiecewiseMap& pm);
nlohmann::json to_json(const IntervalSet& s);
nlohmann::json to_json(const DistortionCert& c);
nlohmann::json to_json(const GeneratorPair& gp);
nlohmann::json to_json(const FiniteSubset& u);
nlohmann::json to_json(const TranslatingSet& t);
nlohmann::json to_json(const MatchingCertificate& cert);
nlohmann::json to_json(const PipelineConfig& cfg);

// ---------------------------------------------------------------------------
// Emitters (report types, emit-only)
// ---------------------------------------------------------------------------

nlohmann::json to_json(const RadicalSum& s);
nlohmann::json to_json(const SearchStats& s);
nlohmann::json to_json(const WordSearchResult& r);
nlohmann::json to_json(const NoRelationResult& r);
nlohmann::json to_json(const DistortionCheck& r);
nlohmann::json to_json(const PigeonholeWitness& w);
nlohmann::json to_json(const ValidationReport& r);
nlohmann::json to_json(const MarriageReport& r);
nlohmann::json to_json(const EgsReport& r);
nlohmann::json to_json(const MatchingOutcome& o);
nlohmann::json to_json(const SubsetOutcome& o);
nlohmann::json to_json(const CampaignFailure& f);
nlohmann::json to_json(const CampaignReport& r);

// ---------------------------------------------------------------------------
// Parsers; `path` locates the node in diagnostics
// ---------------------------------------------------------------------------

Rational parse_rational(const nlohmann::json& j, const std::string& path);
QSqrt2 parse_qsqrt2(const nlohmann::json& j, const std::string& path);
RealAlgebraic parse_real_algebraic(const nlohmann::json& j, const std::string& path);
Mat2 parse_mat2(const nlohmann::json& j, const std::string& path);
PiecewiseMap parse_piecewise(const nlohmann::json& j, const std::string& path);
IntervalSet parse_interval_set(const nlohmann::json& j, const std::string& path);
DistortionCert parse_distortion_cert(const nlohmann::json& j, const std::string& path);
GeneratorPair parse_generator_pair(const nlohmann::json& j, const std::string& path);
FiniteSubset parse_finite_subset(const nlohmann::json& j, const std::string& path);
TranslatingSet parse_translating_set(const nlohmann::json& j, const std::string& path);
MatchingCertificate parse_matching_certificate(const nlohmann::json& j,
                                               const std::string& path);
PipelineConfig parse_pipeline_config(const nlohmann::json& j, const std::string& path);

// ---------------------------------------------------------------------------
// Quick-entry text grammar and word files
// ---------------------------------------------------------------------------

/// "[a, b; c, d]" with q-entries per the grammar above; the matrix
/// constructor's determinant normalization applies.
Mat2 parse_mat2_text(const std::string& text);

/// Semicolon-separated "(interval) matrix" clauses; the result is
/// normalized, so continuity, pole, and fixed-infinity violations are
/// rejected.  Quick entry is limited to rational interval ends.
PiecewiseMap parse_piecewise_text(const std::string& text);

/// One word per line, trailing newline.
std::string words_to_text(const std::vector<std::string>& words);

/// Accepts blank lines; every other line must be a nonempty word over
/// {a, A, b, B}.
std::vector<std::string> parse_words_text(const std::string& text,
                                          const std::string& path);

}  // namespace paradec
