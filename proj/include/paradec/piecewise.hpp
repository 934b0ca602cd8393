/**
 * @file piecewise.hpp
 * @brief Piecewise projective homeomorphisms of R fixing oo: canonical
 *        forms, exact equality, composition, inversion, validation, builtin
 *        generator families, and the splice construction that extends a
 *        hyperbolic matrix by the identity outside its fixed-point gap.
 *
 * A map is a strictly increasing list of algebraic breakpoints plus one
 * det-1 matrix per cell of the induced partition of R; adjacent pieces agree
 * exactly at the shared breakpoint, no piece has a pole in the closed span
 * of its cell (hence every piece is increasing), and the first and last
 * pieces fix oo (c = 0).  Canonical form additionally has no two adjacent
 * pieces equal, so equality is componentwise.
 */
#pragma once

#include <string>
#include <vector>

#include "paradec/interval_set.hpp"
#include "paradec/mat2.hpp"
#include "paradec/real_algebraic.hpp"

namespace paradec {

class PiecewiseMap {
 public:
  /// Structural checks only (matching lengths, strictly increasing
  /// breakpoints); semantic invariants are the job of pw_normalize.
  PiecewiseMap(std::vector<RealAlgebraic> breakpoints, std::vector<Mat2> pieces);

  static PiecewiseMap identity() { return PiecewiseMap({}, {Mat2::identity()}); }

  const std::vector<RealAlgebraic>& breakpoints() const { return breaks_; }
  const std::vector<Mat2>& pieces() const { return pieces_; }

  bool is_identity() const { return breaks_.empty() && pieces_[0].is_identity(); }

  /// Index of the piece acting immediately to the right of x.
  std::size_t piece_index_at(const RealAlgebraic& x) const;

  /// Canonical text key (requires canonical form and quadratically
  /// representable breakpoints; every pipeline-produced map qualifies).
  std::string key() const;
  std::string str() const;

 private:
  std::vector<RealAlgebraic> breaks_;
  std::vector<Mat2> pieces_;
};

/// Verifies the semantic invariants (continuity at each breakpoint, no pole
/// in any closed cell span, oo fixed) and merges adjacent equal pieces into
/// canonical form.  Throws MathError naming the offending breakpoint.
PiecewiseMap pw_normalize(const PiecewiseMap& pm);

/// The map "apply f, then g", in canonical form.  Breakpoints are f's
/// breakpoints plus the f-preimages of g's breakpoints.
PiecewiseMap pw_compose(const PiecewiseMap& f, const PiecewiseMap& g);

/// Exact inverse: breakpoints are the images of f's breakpoints.
PiecewiseMap pw_invert(const PiecewiseMap& f);

/// Exact equality of canonical forms (componentwise).
bool pw_equal(const PiecewiseMap& f, const PiecewiseMap& g);

/// Evaluation; oo maps to oo by the fixing invariant.
ProjPoint pw_act(const ProjPoint& x, const PiecewiseMap& f);

enum class Ring { integers, zsqrt2_with_halves };

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Reports every violated invariant plus ring membership of all matrix
/// entries (integers: integer entries and rational breakpoints;
/// zsqrt2_with_halves: entries r + s*sqrt2 with r, s dyadic rationals).
ValidationReport pw_validate(const PiecewiseMap& pm, Ring ring);

/// Builtin generator families: "thompson-f" (the two standard generators in
/// the piecewise-PSL2(Z) model), "translation(<rational>)", and
/// "gamma-conjugators" (one-piece parabolic conjugates of the translation by
/// the diagonal sqrt2 matrix).  Unknown names are a ConfigError.
std::vector<PiecewiseMap> builtin_generators(const std::string& name);

/// Extends a hyperbolic matrix with finite fixed points xi1 < xi2 flanking
/// [lo, hi] (xi1 < lo, hi < xi2) to the homeomorphism equal to m on
/// [xi1, xi2] and the identity elsewhere.  Throws MathError otherwise.
PiecewiseMap splice_lift(const Mat2& m, const RealAlgebraic& lo, const RealAlgebraic& hi);

/// Image of a set under a piecewise map (splits at breakpoints, then maps
/// each fragment through its piece).
IntervalSet pushforward(const IntervalSet& j, const PiecewiseMap& f);

}  // namespace paradec
