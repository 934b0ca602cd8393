/**
 * @file mat2.cpp
 * @brief Implementation of the PSL2-over-Q(sqrt2) matrix type and its action.
 */
#include "paradec/mat2.hpp"

#include <utility>

#include "paradec/errors.hpp"

namespace paradec {

Mat2::Mat2(QSqrt2 a, QSqrt2 b, QSqrt2 c, QSqrt2 d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  const QSqrt2 det = a_ * d_ - b_ * c_;
  if (det.is_zero()) throw ConfigError("matrix is singular");
  if (!(det == QSqrt2(Rational(1)))) {
    const auto root = det.sqrt_exact();
    if (!root) throw ConfigError("matrix determinant " + det.str() + " is not a unit square");
    const QSqrt2 scale = root->inv();
    a_ *= scale;
    b_ *= scale;
    c_ *= scale;
    d_ *= scale;
  }
  // Canonical sign: first nonzero entry in the order a, b, c, d is positive.
  for (const QSqrt2* e : {&a_, &b_, &c_, &d_}) {
    const int s = e->sign();
    if (s == 0) continue;
    if (s < 0) {
      a_ = -a_;
      b_ = -b_;
      c_ = -c_;
      d_ = -d_;
    }
    break;
  }
}

bool Mat2::is_identity() const { return *this == identity(); }

std::string Mat2::key() const {
  return rat_to_string(a_.r()) + "," + rat_to_string(a_.s()) + "|" + rat_to_string(b_.r()) + "," +
         rat_to_string(b_.s()) + "|" + rat_to_string(c_.r()) + "," + rat_to_string(c_.s()) + "|" +
         rat_to_string(d_.r()) + "," + rat_to_string(d_.s());
}

std::string Mat2::str() const {
  return "(" + a_.str() + " " + b_.str() + "; " + c_.str() + " " + d_.str() + ")";
}

Mat2 compose(const Mat2& g, const Mat2& h) {
  // Moebius maps compose as phi_M . phi_N = phi_{M*N}; "apply g, then h" is
  // phi_h . phi_g, so the result carries the ordinary product h * g.
  return Mat2(h.a() * g.a() + h.b() * g.c(), h.a() * g.b() + h.b() * g.d(),
              h.c() * g.a() + h.d() * g.c(), h.c() * g.b() + h.d() * g.d());
}

Mat2 invert(const Mat2& g) { return Mat2(g.d(), -g.b(), -g.c(), g.a()); }

ProjPoint act(const ProjPoint& x, const Mat2& g) {
  if (!x) {
    if (g.c().is_zero()) return std::nullopt;  // oo fixed
    return RealAlgebraic(g.a() / g.c());
  }
  return x->moebius_image(g.a(), g.b(), g.c(), g.d());
}

QSqrt2 dist_to_identity(const Mat2& g) {
  const QSqrt2 one(Rational(1));
  const QSqrt2 plus = max(max((g.a() - one).abs(), g.b().abs()),
                          max(g.c().abs(), (g.d() - one).abs()));
  const QSqrt2 minus = max(max((g.a() + one).abs(), g.b().abs()),
                           max(g.c().abs(), (g.d() + one).abs()));
  return min(plus, minus);
}

namespace {

/// Exact value of 1/(c x + d)^2 at an algebraic point known in closed form
/// as p + q * sqrt(w) over Q(sqrt2).  The linear image is v = (c p + d) +
/// (c q) sqrt(w); squaring stays in the same quadratic extension and the
/// inverse is taken against the conjugate.
RealAlgebraic derivative_at(const Mat2& g, const RealAlgebraic& x) {
  const auto e = x.ext();
  if (!e)
    throw MathError("derivative endpoint is outside the quadratic extensions handled exactly");
  const QSqrt2 vp = g.c() * e->p + g.d();
  const QSqrt2 vq = g.c() * e->q;
  if (vq.is_zero()) {
    // v is in Q(sqrt2); the pole case v = 0 was excluded by the caller.
    return RealAlgebraic((vp * vp).inv());
  }
  // v^2 = P + Q sqrt(w); 1/v^2 = (P - Q sqrt(w)) / N with N = (vp^2 - vq^2 w)^2,
  // the squared conjugate norm, nonzero because w is not a square in Q(sqrt2).
  const QSqrt2 P = vp * vp + vq * vq * e->g;
  const QSqrt2 Q = (vp * vq) + (vp * vq);
  const QSqrt2 conj_norm = vp * vp - vq * vq * e->g;
  if (conj_norm.is_zero()) throw MathError("derivative endpoint extension is not normalized");
  const QSqrt2 N = (conj_norm * conj_norm).inv();
  return RealAlgebraic::from_ext({P * N, -(Q * N), e->g});
}

}  // namespace

std::pair<RealAlgebraic, RealAlgebraic> derivative_bounds(const Mat2& g, const RealAlgebraic& lo,
                                                          const RealAlgebraic& hi) {
  if (RealAlgebraic::compare(lo, hi) > 0) throw MathError("derivative_bounds: empty interval");
  if (g.c().is_zero()) {
    // Affine map: constant derivative 1/d^2.
    const RealAlgebraic v((g.d() * g.d()).inv());
    return {v, v};
  }
  const int s_lo = lo.sign_of_linear(g.c(), g.d());
  const int s_hi = hi.sign_of_linear(g.c(), g.d());
  if (s_lo == 0 || s_hi == 0 || s_lo != s_hi)
    throw MathError("derivative_bounds: pole of " + g.str() + " lies in the interval");
  RealAlgebraic at_lo = derivative_at(g, lo);
  RealAlgebraic at_hi = derivative_at(g, hi);
  if (at_hi < at_lo) std::swap(at_lo, at_hi);
  return {at_lo, at_hi};
}

Classification classify(const Mat2& g) {
  if (g.is_identity()) throw MathError("classify: the identity has no class");
  const QSqrt2 tr = g.a() + g.d();
  const QSqrt2 disc = tr * tr - QSqrt2(Rational(4));  // = (d-a)^2 + 4 b c
  const int ds = disc.sign();
  Classification out;
  out.kind = ds < 0 ? MatClass::elliptic : (ds == 0 ? MatClass::parabolic : MatClass::hyperbolic);
  if (ds < 0) return out;

  if (g.c().is_zero()) {
    // oo is fixed; a finite fixed point solves (d - a) t = b.
    if (g.a() == g.d()) {
      out.fixed.push_back(std::nullopt);  // translation: oo only
    } else {
      out.fixed.push_back(RealAlgebraic(g.b() / (g.d() - g.a())));
      out.fixed.push_back(std::nullopt);
    }
    return out;
  }
  if (ds == 0) {
    out.fixed.push_back(RealAlgebraic((g.a() - g.d()) / (g.c() + g.c())));
    return out;
  }
  const RealAlgebraic r1 = RealAlgebraic::quadratic_root(g.c(), g.d() - g.a(), -g.b(), -1);
  const RealAlgebraic r2 = RealAlgebraic::quadratic_root(g.c(), g.d() - g.a(), -g.b(), +1);
  if (r1 < r2) {
    out.fixed.push_back(r1);
    out.fixed.push_back(r2);
  } else {
    out.fixed.push_back(r2);
    out.fixed.push_back(r1);
  }
  return out;
}

}  // namespace paradec
