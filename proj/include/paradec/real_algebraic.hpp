/**
 * @file real_algebraic.hpp
 * @brief Exact real algebraic numbers: square-free rational polynomial plus
 *        an open isolating interval, with decidable comparison, sign, Moebius
 *        images over Q(sqrt2) matrices, rational enclosures, and canonical
 *        dedup keys.
 *
 * Values constructed by this library additionally carry an internal
 * quadratic-extension form p + q*sqrt(g) with p, q, g in Q(sqrt2) (the field
 * every pipeline value lives in), which makes comparisons and Moebius
 * transport cheap.  The form is an acceleration cache, never serialized:
 * the (poly, lo, hi) triple alone determines the value.
 *
 * All values are immutable; refinement produces new intervals internally and
 * never mutates shared state, so values may be shared freely across threads.
 */
#pragma once

#include <optional>
#include <string>

#include "paradec/poly.hpp"
#include "paradec/qsqrt2.hpp"

namespace paradec {

/// Value p + q*sqrt(g) with p, q, g in Q(sqrt2), g >= 0 (principal root).
/// Normalized: q = 0 implies g = 0; g never a square in Q(sqrt2) when q != 0
/// (square radicands fold into p).  The pair (p, q^2*g, sign q) is a complete
/// invariant of the value, independent of radicand rescaling.
struct ExtQuad {
  QSqrt2 p, q, g;
};

/// Sign of p + q*sqrt(g) for a normalized ExtQuad, decided exactly.
int ext_sign(const ExtQuad& e);

/// Sign of p + q*sqrt(g1) + r*sqrt(g2), all parts in Q(sqrt2), g1, g2 >= 0.
/// Decides exactly by folding dependent radicands and nested squaring.
int ext2_sign(const QSqrt2& p, const QSqrt2& q, const QSqrt2& g1,
              const QSqrt2& r, const QSqrt2& g2);

class RealAlgebraic {
 public:
  /// Rational r as root of (t - r).
  explicit RealAlgebraic(const Rational& r);
  RealAlgebraic(long n) : RealAlgebraic(Rational(n)) {}

  /// Value of Q(sqrt2) via its (at most quadratic) minimal polynomial.
  explicit RealAlgebraic(const QSqrt2& v);

  /// Value p + q*sqrt(g); folds degenerate radicands, rejects g < 0.
  static RealAlgebraic from_ext(ExtQuad e);

  /// Root (-B + branch*sqrt(B^2 - 4AC)) / (2A) of A t^2 + B t + C, A != 0,
  /// branch in {-1, +1}.  Rejects negative discriminants.
  static RealAlgebraic quadratic_root(const QSqrt2& A, const QSqrt2& B,
                                      const QSqrt2& C, int branch);

  /// From serialized parts; validates every type invariant (square-free,
  /// exactly one root in (lo, hi), non-root endpoints, degree <= 4) and
  /// throws ConfigError with a description otherwise.  Attaches the
  /// quadratic-extension form when the polynomial degree is <= 2.
  static RealAlgebraic from_parts(Poly poly, Rational lo, Rational hi);

  const Poly& poly() const { return poly_; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  const std::optional<ExtQuad>& ext() const { return ext_; }

  /// Exact sign of the value.
  int sign() const;

  /// Exact three-way comparison: -1, 0, +1.  Fast path when both sides carry
  /// extension forms; otherwise interval refinement with the gcd equality
  /// test (equality is decided by whether gcd(x.poly, y.poly) has a root in
  /// the overlap, so refinement of unequal values terminates).
  static int compare(const RealAlgebraic& x, const RealAlgebraic& y);

  bool operator==(const RealAlgebraic& o) const { return compare(*this, o) == 0; }
  bool operator!=(const RealAlgebraic& o) const { return compare(*this, o) != 0; }
  bool operator<(const RealAlgebraic& o) const { return compare(*this, o) < 0; }
  bool operator<=(const RealAlgebraic& o) const { return compare(*this, o) <= 0; }
  bool operator>(const RealAlgebraic& o) const { return compare(*this, o) > 0; }
  bool operator>=(const RealAlgebraic& o) const { return compare(*this, o) >= 0; }

  /// Rational enclosure lo < value < hi with hi - lo <= width (width > 0).
  /// Deterministic bisection from the stored isolator.
  std::pair<Rational, Rational> approx(const Rational& width) const;

  /// Exact rational value if the number is rational, else nullopt.
  std::optional<Rational> as_rational() const;

  /// Exact Q(sqrt2) value if the number lies in Q(sqrt2), else nullopt.
  /// (Detection relies on the extension form; values parsed from degree-3/4
  /// polynomials are reported as nullopt even in rare in-field cases.)
  std::optional<QSqrt2> as_qsqrt2() const;

  /// Image (a*x + b)/(c*x + d); nullopt encodes the point at infinity
  /// (c*x + d = 0).  Requires ad - bc != 0.  Stays within the quadratic
  /// extension when the input carries one; otherwise transports the
  /// polynomial by substitution and re-isolates.
  std::optional<RealAlgebraic> moebius_image(const QSqrt2& a, const QSqrt2& b,
                                             const QSqrt2& c, const QSqrt2& d) const;

  /// Exact sign of c*value + d for c, d in Q(sqrt2) (pole tests).
  int sign_of_linear(const QSqrt2& c, const QSqrt2& d) const;

  /// Dedup key: equal values give equal keys whenever both carry extension
  /// forms (always true for pipeline-constructed values); unequal values
  /// always give distinct keys.  Plain values key on the canonical primitive
  /// polynomial and the index of the root among its real roots.
  std::string canonical_key() const;

  /// Decimal-ish display with exact fallback, for diagnostics.
  std::string str() const;

 private:
  RealAlgebraic(Poly poly, Rational lo, Rational hi, std::optional<ExtQuad> ext)
      : poly_(std::move(poly)), lo_(std::move(lo)), hi_(std::move(hi)), ext_(std::move(ext)) {}

  Poly poly_;      // square-free, exactly one root in (lo_, hi_)
  Rational lo_, hi_;  // open isolator; endpoints are not roots
  std::optional<ExtQuad> ext_;
};

/// Exact sign of f(x) for a rational polynomial f at an algebraic point.
int sign_of_poly_at(const Poly& f, const RealAlgebraic& x);

}  // namespace paradec
