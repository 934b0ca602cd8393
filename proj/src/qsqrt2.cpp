/**
 * @file qsqrt2.cpp
 * @brief Sign determination, inversion, exact square roots in Q(sqrt2).
 */
#include "paradec/qsqrt2.hpp"

namespace paradec {

int QSqrt2::sign() const {
  const int sr = sgn(r_);
  const int ss = sgn(s_);
  if (ss == 0) return sr;
  if (sr == 0) return ss;
  if (sr == ss) return sr;
  // Signs disagree: compare |r| with sqrt2*|s| exactly via squares.
  // r^2 > 2 s^2  <=>  |r| dominates, so the sign of r wins.
  const int squares = cmp(r_ * r_, 2 * s_ * s_);
  if (squares == 0)
    throw MathError("QSqrt2::sign: r^2 == 2 s^2 with r, s nonzero (impossible)");
  return squares > 0 ? sr : ss;
}

QSqrt2 QSqrt2::inv() const {
  const Rational n = norm();
  if (sgn(n) == 0) throw MathError("QSqrt2::inv: division by zero");
  return QSqrt2(r_ / n, -s_ / n);
}

std::optional<QSqrt2> QSqrt2::sqrt_exact() const {
  if (sign() < 0) return std::nullopt;
  if (is_zero()) return QSqrt2();
  // Solve (x + y*sqrt2)^2 = r + s*sqrt2: x^2 + 2 y^2 = r and 2 x y = s.
  if (sgn(s_) == 0) {
    if (auto x = rat_sqrt_exact(r_)) return QSqrt2(*x);                // y = 0
    if (auto y = rat_sqrt_exact(r_ / 2)) return QSqrt2(Rational(0), *y);  // x = 0
    return std::nullopt;
  }
  // s != 0 forces x != 0; eliminate y = s/(2x): 2 x^4 - 2 r x^2 + s^2 = 0,
  // so x^2 = (r +- sqrt(r^2 - 2 s^2))/2 with the inner root rational.
  const auto root_norm = rat_sqrt_exact(norm());
  if (!root_norm) return std::nullopt;
  for (int branch = 0; branch < 2; ++branch) {
    const Rational x2 =
        branch == 0 ? Rational((r_ + *root_norm) / 2) : Rational((r_ - *root_norm) / 2);
    if (sgn(x2) <= 0) continue;
    if (auto x = rat_sqrt_exact(x2)) {
      QSqrt2 cand(*x, s_ / (2 * *x));
      if (cand.sign() < 0) cand = -cand;
      if (cand * cand == *this) return cand;
    }
  }
  return std::nullopt;
}

std::pair<Rational, Rational> QSqrt2::approx(unsigned long k) const {
  if (sgn(s_) == 0) return {r_, r_};
  const auto [lo2, hi2] = rat_sqrt_bounds(Rational(2), k);
  if (sgn(s_) > 0) return {r_ + s_ * lo2, r_ + s_ * hi2};
  return {r_ + s_ * hi2, r_ + s_ * lo2};
}

std::string QSqrt2::str() const {
  if (sgn(s_) == 0) return rat_to_string(r_);
  return rat_to_string(r_) + "+" + rat_to_string(s_) + "*sqrt2";
}

}  // namespace paradec
