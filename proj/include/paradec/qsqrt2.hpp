/**
 * @file qsqrt2.hpp
 * @brief The real quadratic field Q(sqrt2): values r + s*sqrt(2) with exact
 *        arithmetic, exact sign determination, and exact square roots.
 *
 * Sign determination never approximates: it is a case analysis on the signs
 * of r and s, falling back to the exact comparison r^2 vs 2 s^2 when they
 * disagree (sqrt2 is irrational, so ties are impossible for nonzero values).
 * Division multiplies by the conjugate r - s*sqrt2 and divides by the field
 * norm r^2 - 2 s^2, which vanishes only at zero.
 */
#pragma once

#include <optional>
#include <string>
#include <utility>

#include "paradec/rational.hpp"

namespace paradec {

class QSqrt2 {
 public:
  QSqrt2() : r_(0), s_(0) {}
  QSqrt2(const Rational& r) : r_(r), s_(0) {}  // NOLINT: implicit by design
  QSqrt2(long r) : r_(r), s_(0) {}             // NOLINT
  QSqrt2(const Rational& r, const Rational& s) : r_(r), s_(s) {}

  static QSqrt2 sqrt2() { return QSqrt2(Rational(0), Rational(1)); }

  const Rational& r() const { return r_; }
  const Rational& s() const { return s_; }
  bool is_rational() const { return sgn(s_) == 0; }
  bool is_zero() const { return sgn(r_) == 0 && sgn(s_) == 0; }

  QSqrt2 operator-() const { return QSqrt2(-r_, -s_); }
  QSqrt2 conj() const { return QSqrt2(r_, -s_); }
  /// Field norm r^2 - 2 s^2 (value times its conjugate).
  Rational norm() const { return r_ * r_ - 2 * s_ * s_; }

  friend QSqrt2 operator+(const QSqrt2& a, const QSqrt2& b) {
    return QSqrt2(a.r_ + b.r_, a.s_ + b.s_);
  }
  friend QSqrt2 operator-(const QSqrt2& a, const QSqrt2& b) {
    return QSqrt2(a.r_ - b.r_, a.s_ - b.s_);
  }
  friend QSqrt2 operator*(const QSqrt2& a, const QSqrt2& b) {
    return QSqrt2(a.r_ * b.r_ + 2 * a.s_ * b.s_, a.r_ * b.s_ + a.s_ * b.r_);
  }
  QSqrt2 inv() const;
  friend QSqrt2 operator/(const QSqrt2& a, const QSqrt2& b) { return a * b.inv(); }

  QSqrt2& operator+=(const QSqrt2& o) { return *this = *this + o; }
  QSqrt2& operator-=(const QSqrt2& o) { return *this = *this - o; }
  QSqrt2& operator*=(const QSqrt2& o) { return *this = *this * o; }

  friend bool operator==(const QSqrt2& a, const QSqrt2& b) {
    return a.r_ == b.r_ && a.s_ == b.s_;
  }
  friend bool operator!=(const QSqrt2& a, const QSqrt2& b) { return !(a == b); }

  /// Exact sign: -1, 0, +1.
  int sign() const;

  /// Exact total-order comparison: sign(*this - o).
  int compare(const QSqrt2& o) const { return (*this - o).sign(); }
  bool operator<(const QSqrt2& o) const { return compare(o) < 0; }
  bool operator<=(const QSqrt2& o) const { return compare(o) <= 0; }
  bool operator>(const QSqrt2& o) const { return compare(o) > 0; }
  bool operator>=(const QSqrt2& o) const { return compare(o) >= 0; }

  QSqrt2 abs() const { return sign() < 0 ? -*this : *this; }

  /// Exact nonnegative square root if *this is a square in Q(sqrt2).
  std::optional<QSqrt2> sqrt_exact() const;

  /// Rational enclosure lo <= value <= hi with hi - lo shrinking in k.
  std::pair<Rational, Rational> approx(unsigned long k) const;

  /// Compact text "r" or "r+s*sqrt2" (exact, canonical); used in logs/keys.
  std::string str() const;

 private:
  Rational r_, s_;
};

inline QSqrt2 max(const QSqrt2& a, const QSqrt2& b) { return a.compare(b) >= 0 ? a : b; }
inline QSqrt2 min(const QSqrt2& a, const QSqrt2& b) { return a.compare(b) <= 0 ? a : b; }

}  // namespace paradec
