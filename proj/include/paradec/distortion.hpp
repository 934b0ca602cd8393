/**
 * @file distortion.hpp
 * @brief Measure-distortion certificates for near-identity Moebius maps and
 *        the exact pigeonhole argument producing a positive-measure set that
 *        four of seven maps carry into a common target.
 *
 * The certificate rests on a closed-form derivative bound: a matrix whose
 * entry distance from the identity is below delta has |c*x + d - 1| bounded
 * by (R+1)*delta on [-R, R], so its derivative 1/(c*x+d)^2 on the interval
 * lies in [(1+(R+1)delta)^-2, (1-(R+1)delta)^-2].  Choosing delta so that
 * this range sits strictly inside (1-eps, 1+eps) pins every measure ratio
 * mu(J*g)/mu(J) into the same window, exactly.
 */
#pragma once

#include <array>
#include <optional>
#include <vector>

#include "paradec/interval_set.hpp"
#include "paradec/mat2.hpp"
#include "paradec/rational.hpp"
#include "paradec/real_algebraic.hpp"

namespace paradec {

/// Certified constants: every g with dist_to_identity(g) < delta has
/// derivative range [deriv_lo, deriv_hi] on [i_lo, i_hi], strictly inside
/// (1 - epsilon, 1 + epsilon), hence distorts the measure of any subset of
/// the interval by a ratio strictly inside the same window.
struct DistortionCert {
  Rational i_lo, i_hi;  ///< compact base interval I
  Rational epsilon;     ///< admitted relative distortion, in (0, 1)
  Rational delta;       ///< certified entry-distance radius, of the form 1/n
  Rational radius;      ///< R with I contained in [-R, R]
  Rational deriv_lo;    ///< (1 + (R+1)delta)^-2, exactly
  Rational deriv_hi;    ///< (1 - (R+1)delta)^-2, exactly
};

/// Largest delta of the form 1/n whose certificate closes (both derivative
/// bounds strictly inside the window and (R+1)delta < 1).  The conditions
/// relax monotonically as n grows, so the minimal n is found by a doubling
/// then binary search over exact rational inequalities.
/// Throws ConfigError when i_lo > i_hi or epsilon is outside (0, 1).
DistortionCert distortion_delta(const Rational& i_lo, const Rational& i_hi,
                                const Rational& epsilon);

struct DistortionCheck {
  bool pass;                     ///< ratio strictly inside (1-eps, 1+eps)
  std::optional<QSqrt2> ratio;   ///< exact ratio when it lies in Q(sqrt2)
  Rational ratio_lo, ratio_hi;   ///< rational enclosure, width <= 1e-6
};

/// Exact membership test of mu(J*g)/mu(J) in (1 - eps, 1 + eps); the pass
/// verdict is decided by radical-sum comparison even when the ratio itself
/// leaves Q(sqrt2).  Throws ConfigError when J is empty, J is not contained
/// in [i_lo, i_hi], or the pole of g meets the interval.
DistortionCheck check_distortion(const Mat2& g, const RealAlgebraic& i_lo,
                                 const RealAlgebraic& i_hi,
                                 const IntervalSet& j,
                                 const Rational& epsilon);

/// Positive-measure witness cell group for the coverage argument.  Indices
/// select from g_0 = identity and the six supplied maps g_1..g_6; the union
/// is carried into J by each indexed map, exactly.
struct PigeonholeWitness {
  IntervalSet cell_union;        ///< L: cells sharing one coverage set
  std::array<int, 4> indices;    ///< four covering indices, ascending
  std::vector<int> coverage;     ///< full coverage set of the chosen cells
  RadicalSum total;              ///< sum of mu(L_i) over i = 0..6, exact
  RadicalSum gate;               ///< 3 * mu(I), exact; total > gate holds
};

/// Exact pigeonhole computation.  Verifies the preconditions (J inside I
/// with mu(J) >= mu(I)/2; each g_i^-1 with derivative range on I strictly
/// inside (1 - 1/48, 1 + 1/48) and with I*g_i^-1 inside the concentric
/// interval I' scaled by 1 + 1/48), throwing ConfigError listing every
/// violated one.  Then computes L_i = (J*g_i^-1) ∩ I, sweeps the endpoint
/// arrangement, checks the exact identity sum mu(L_i) = sum coverage *
/// mu(cell) and the gate sum mu(L_i) > 3 mu(I), and returns the maximal-
/// measure union of cells sharing a coverage set of size >= 4.  The gate,
/// the identity, the existence of a coverage-4 cell, and the containments
/// L*g_i in J all follow from verified preconditions, so their failure
/// throws MathError (arithmetic bug), never a soft negative.
PigeonholeWitness pigeonhole_witness(const Rational& i_lo,
                                     const Rational& i_hi,
                                     const IntervalSet& j,
                                     const std::vector<Mat2>& gs);

}  // namespace paradec
