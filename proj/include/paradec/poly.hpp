/**
 * @file poly.hpp
 * @brief Dense univariate polynomials over Q: the toolkit behind real
 *        algebraic numbers (gcd, square-free part, Sturm root counting,
 *        shifts/scales).
 *
 * Degrees stay tiny (four in the main pipeline, a few dozen in rare generic
 * fallbacks), so everything is the straightforward classical algorithm over
 * exact rationals. Coefficients are stored low-order first; the zero
 * polynomial has an empty coefficient vector and degree -1.
 */
#pragma once

#include <string>
#include <vector>

#include "paradec/rational.hpp"

namespace paradec {

class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Poly constant(const Rational& a) { return Poly({a}); }
  /// t - a (the minimal polynomial of the rational a).
  static Poly linear_root(const Rational& a) { return Poly({-a, Rational(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Rational& lead() const { return c_.back(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational at(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

  Rational eval(const Rational& x) const;
  int sign_at(const Rational& x) const { return sgn(eval(x)); }

  Poly derivative() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  Poly scaled(const Rational& k) const;  // k * p
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Quotient and remainder of exact division (den lead must be invertible,
  /// i.e. nonzero -- always true over Q).
  static std::pair<Poly, Poly> divmod(const Poly& num, const Poly& den);

  /// Monic gcd (1 for coprime inputs; zero polynomial only if both zero).
  static Poly gcd(const Poly& a, const Poly& b);

  /// p / gcd(p, p'): same roots, all simple.
  Poly squarefree() const;

  /// All coefficients integer, gcd 1, positive leading coefficient.
  /// Canonical representative of the associate class; used for keys.
  Poly primitive_integer() const;

  /// 1 + max |c_i/c_n| : every real root lies in (-bound, bound).
  Rational cauchy_bound() const;

  std::string str() const;  // human-readable, for diagnostics

 private:
  void trim();
  std::vector<Rational> c_;
};

/**
 * @brief Sturm sequence of a square-free polynomial.
 *
 * count(a, b) returns the number of real roots in the open interval (a, b);
 * both endpoints must not be roots (callers maintain that invariant).
 */
class SturmSeq {
 public:
  explicit SturmSeq(const Poly& squarefree);
  int variations(const Rational& x) const;
  int count(const Rational& lo, const Rational& hi) const;
  int count_all() const;  // over (-bound, bound)

 private:
  std::vector<Poly> seq_;
  Rational bound_;
};

}  // namespace paradec
