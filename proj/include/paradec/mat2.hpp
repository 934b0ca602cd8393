/**
 * @file mat2.hpp
 * @brief Determinant-one 2x2 matrices over Q(sqrt2) up to sign, their Moebius
 *        action on R u {oo}, an entrywise distance to the identity, exact
 *        derivative bounds, and fixed-point classification.
 *
 * A Mat2 is stored in a canonical sign representative (the first nonzero
 * entry in the order a, b, c, d is positive), so equality of group elements
 * is componentwise.  The action is x |-> (a x + b)/(c x + d); composition
 * follows application order, i.e. act(x, compose(g, h)) = act(act(x, g), h).
 */
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "paradec/qsqrt2.hpp"
#include "paradec/real_algebraic.hpp"

namespace paradec {

/// A point of R u {oo}; disengaged optional is the point at infinity.
using ProjPoint = std::optional<RealAlgebraic>;

class Mat2 {
 public:
  /// Validates and canonicalizes.  Determinants other than 1 are accepted
  /// only when positive with a square root in Q(sqrt2); the entries are then
  /// divided by that root.  Everything else is a ConfigError.
  Mat2(QSqrt2 a, QSqrt2 b, QSqrt2 c, QSqrt2 d);

  static Mat2 identity() { return Mat2(QSqrt2(Rational(1)), QSqrt2(), QSqrt2(), QSqrt2(Rational(1))); }

  const QSqrt2& a() const { return a_; }
  const QSqrt2& b() const { return b_; }
  const QSqrt2& c() const { return c_; }
  const QSqrt2& d() const { return d_; }

  bool is_identity() const;

  bool operator==(const Mat2& o) const {
    return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
  }
  bool operator!=(const Mat2& o) const { return !(*this == o); }

  /// Canonical text key; equal group elements produce equal keys.
  std::string key() const;
  std::string str() const;

 private:
  QSqrt2 a_, b_, c_, d_;
};

/// Group element "apply g, then h": act(x, compose(g, h)) = act(act(x, g), h).
Mat2 compose(const Mat2& g, const Mat2& h);

/// Inverse (d -b; -c a), re-canonicalized.
Mat2 invert(const Mat2& g);

/// Moebius action (a x + b)/(c x + d); oo maps to a/c, the pole maps to oo.
ProjPoint act(const ProjPoint& x, const Mat2& g);

/// Entrywise sup-distance to the identity, minimized over the two sign
/// representatives: min over +-g of max(|a-1|, |b|, |c|, |d-1|).  Zero iff g
/// is the identity group element.
QSqrt2 dist_to_identity(const Mat2& g);

/// Exact infimum and supremum of the derivative 1/(c x + d)^2 over the
/// closed interval [lo, hi].  The derivative is monotone on any pole-free
/// interval, so the bounds are attained at the endpoints.  Throws MathError
/// when the pole lies in [lo, hi] or an endpoint lies outside the quadratic
/// extensions this library evaluates in closed form.
std::pair<RealAlgebraic, RealAlgebraic> derivative_bounds(const Mat2& g, const RealAlgebraic& lo,
                                                          const RealAlgebraic& hi);

enum class MatClass { elliptic, parabolic, hyperbolic };

/// Classification by |trace| versus 2 plus real fixed points (roots of
/// c t^2 + (d - a) t - b, with oo included when c = 0), sorted with oo last.
struct Classification {
  MatClass kind;
  std::vector<ProjPoint> fixed;  // hyperbolic: 2, parabolic: 1, elliptic: 0
};

/// Throws MathError on the identity (no meaningful class).
Classification classify(const Mat2& g);

}  // namespace paradec
