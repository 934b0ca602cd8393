/**
 * @file interval_set.hpp
 * @brief Finite unions of half-open intervals [lo, hi) with real algebraic
 *        endpoints, exact set algebra, and exact Lebesgue measure.
 *
 * Measures are sums of endpoint differences.  Every endpoint this library
 * produces lies in a quadratic extension Q(sqrt2)(sqrt g), so a measure is a
 * finite sum  base + sum_j coeff_j * sqrt(g_j)  with base, coeff_j, g_j in
 * Q(sqrt2).  RadicalSum stores exactly that, groups radicands up to square
 * factors, and decides zero and sign exactly: square roots of pairwise
 * inequivalent radicands are linearly independent over the base field, so
 * the sum is zero only when every coefficient is zero; nonzero sums get a
 * sign from a shrinking rational enclosure.
 */
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "paradec/mat2.hpp"
#include "paradec/qsqrt2.hpp"
#include "paradec/rational.hpp"
#include "paradec/real_algebraic.hpp"

namespace paradec {

struct Interval {
  RealAlgebraic lo, hi;
};

class IntervalSet {
 public:
  IntervalSet() = default;

  /// Normalizing constructor: drops empty intervals, sorts, merges overlaps
  /// and adjacencies.  Accepts any finite list.
  static IntervalSet from_pieces(std::vector<Interval> pieces);

  /// Single interval; empty set when lo >= hi.
  static IntervalSet interval(const RealAlgebraic& lo, const RealAlgebraic& hi);

  const std::vector<Interval>& intervals() const { return parts_; }
  bool empty() const { return parts_.empty(); }

  bool contains(const RealAlgebraic& x) const;

  bool operator==(const IntervalSet& o) const;
  bool operator!=(const IntervalSet& o) const { return !(*this == o); }

  std::string str() const;

 private:
  std::vector<Interval> parts_;  // disjoint, sorted, hi_k < lo_{k+1}
};

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b);
IntervalSet set_intersect(const IntervalSet& a, const IntervalSet& b);
IntervalSet set_subtract(const IntervalSet& a, const IntervalSet& b);

/// b subset of a, as half-open sets.
bool set_contains(const IntervalSet& a, const IntervalSet& b);

/// Exact value of the form base + sum_j coeff_j * sqrt(radicand_j) with all
/// parts in Q(sqrt2); radicands positive, non-square, pairwise inequivalent
/// modulo squares.  Ordered-field queries are exact.
class RadicalSum {
 public:
  RadicalSum() = default;
  explicit RadicalSum(const QSqrt2& base) : base_(base) {}

  RadicalSum& operator+=(const RealAlgebraic& v);
  RadicalSum& operator-=(const RealAlgebraic& v);
  RadicalSum& operator+=(const RadicalSum& o);
  RadicalSum& operator-=(const RadicalSum& o);

  RadicalSum scaled(const QSqrt2& k) const;

  bool is_zero() const;
  int sign() const;
  static int compare(const RadicalSum& x, const RadicalSum& y);

  bool operator==(const RadicalSum& o) const { return compare(*this, o) == 0; }
  bool operator<(const RadicalSum& o) const { return compare(*this, o) < 0; }
  bool operator>(const RadicalSum& o) const { return compare(*this, o) > 0; }

  /// The exact value when no radical term remains.
  std::optional<QSqrt2> as_qsqrt2() const;

  /// Rational enclosure lo <= value <= hi with hi - lo <= width.
  std::pair<Rational, Rational> approx(const Rational& width) const;

  std::string str() const;

 private:
  void add_term(const QSqrt2& coeff, const QSqrt2& radicand);

  QSqrt2 base_;
  std::vector<std::pair<QSqrt2, QSqrt2>> terms_;  // (radicand, coefficient)
};

/// Exact Lebesgue measure; requires every endpoint to carry its quadratic
/// closed form (all endpoints produced by this library do).
RadicalSum measure(const IntervalSet& a);

/// Image of a set under the Moebius action of g.  The pole of g must not lie
/// in the closure of any interval of the set (MathError otherwise).
IntervalSet pushforward(const IntervalSet& j, const Mat2& g);

}  // namespace paradec
