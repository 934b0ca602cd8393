/**
 * @file real_algebraic.cpp
 * @brief Exact sign/comparison/transport machinery for real algebraic values.
 *
 * Two layers:
 *  - quadratic-extension fast paths: pure Q(sqrt2) case analysis, no
 *    polynomial arithmetic at all (ext_sign / ext2_sign / Moebius rotation
 *    of p + q*sqrt(g) by fractional linear maps over Q(sqrt2));
 *  - general path: square-free polynomials, Sturm counts, and bisection,
 *    with equality decided by the gcd criterion so every loop terminates.
 */
#include "paradec/real_algebraic.hpp"

#include <algorithm>
#include <utility>
#include <vector>

#include "paradec/errors.hpp"

namespace paradec {
namespace {

constexpr int kMaxRefineRounds = 4096;  // tripwire, not a tuning knob

/// One bisection step on an isolating interval of `p`. If the midpoint is a
/// root it must be the unique isolated root, so the interval closes onto it
/// symmetrically; endpoints stay non-roots either way.
void refine_step(const Poly& p, Rational& lo, Rational& hi) {
  const Rational mid = (lo + hi) / 2;
  const int sm = p.sign_at(mid);
  if (sm == 0) {
    const Rational w = (hi - lo) / 4;
    lo = mid - w;
    hi = mid + w;
    return;
  }
  if (p.sign_at(lo) * sm < 0)
    hi = mid;
  else
    lo = mid;
}

/// Rational enclosure of p + q*sqrt(g); widths shrink as k grows.
std::pair<Rational, Rational> ext_enclosure(const ExtQuad& e, unsigned long k) {
  auto [plo, phi] = e.p.approx(k);
  if (e.q.is_zero()) return {plo, phi};
  auto [glo, ghi] = e.g.approx(k);
  if (sgn(glo) < 0) glo = 0;  // g >= 0; clamp interval noise
  const Rational slo = rat_sqrt_bounds(glo, k).first;
  const Rational shi = rat_sqrt_bounds(ghi, k).second;
  auto [qlo, qhi] = e.q.approx(k);
  const Rational corners[4] = {Rational(qlo * slo), Rational(qlo * shi),
                               Rational(qhi * slo), Rational(qhi * shi)};
  Rational lo = corners[0], hi = corners[0];
  for (int i = 1; i < 4; ++i) {
    if (corners[i] < lo) lo = corners[i];
    if (corners[i] > hi) hi = corners[i];
  }
  return {plo + lo, phi + hi};
}

/// Smallest certified isolator for an irrational value with square-free
/// polynomial `sf`, given any shrinking rational enclosure of the value.
template <typename Encloser>
std::pair<Rational, Rational> certify_isolator(const Poly& sf, Encloser enclose) {
  const SturmSeq sturm(sf);
  for (unsigned long k = 8; k <= 1u << 14; k *= 2) {
    auto [lo, hi] = enclose(k);
    if (!(lo < hi)) continue;
    if (sf.sign_at(lo) == 0 || sf.sign_at(hi) == 0) continue;
    if (sturm.count(lo, hi) == 1) return {lo, hi};
  }
  throw MathError("certify_isolator: enclosure failed to isolate a root of " + sf.str());
}

/// Polynomials with coefficients in Q(sqrt2), split as P + sqrt2 * S with
/// rational P, S. Only products and sums are needed (Moebius substitution
/// and conjugate-pair expansion).
struct QS2Poly {
  Poly p, s;

  QS2Poly mul(const QS2Poly& o) const {
    return {p * o.p + (s * o.s).scaled(2), p * o.s + s * o.p};
  }
  QS2Poly add(const QS2Poly& o) const { return {p + o.p, s + o.s}; }
  QS2Poly scaled(const Rational& k) const { return {p.scaled(k), s.scaled(k)}; }
  /// (P + sqrt2 S)(P - sqrt2 S): rational-coefficient conjugate product.
  Poly conj_product() const { return p * p - (s * s).scaled(2); }
};

QS2Poly qs2_linear(const QSqrt2& c0, const QSqrt2& c1) {
  return {Poly({c0.r(), c1.r()}), Poly({c0.s(), c1.s()})};
}

/// Minimal polynomial of p + q*sqrt(g) for a normalized ExtQuad with q != 0:
/// square-free part of (t^2 - 2p t + (p^2 - q^2 g)) times its sqrt2-conjugate.
Poly ext_min_poly(const ExtQuad& e) {
  const QSqrt2 w = e.p * e.p - e.q * e.q * e.g;
  const QSqrt2 m2p = -(e.p + e.p);
  const QS2Poly quad{Poly({w.r(), m2p.r(), Rational(1)}), Poly({w.s(), m2p.s(), Rational(0)})};
  return quad.conj_product().squarefree().primitive_integer();
}

}  // namespace

int ext_sign(const ExtQuad& e) {
  const int sq = e.q.sign();
  if (sq == 0) return e.p.sign();
  const int sp = e.p.sign();
  if (sp == 0) return sq;  // sqrt(g) > 0 whenever q != 0
  if (sp == sq) return sp;
  const int c = (e.p * e.p - e.q * e.q * e.g).sign();
  if (c == 0) throw MathError("ext_sign: p^2 == q^2 g (radicand was a square)");
  return c > 0 ? sp : sq;
}

int ext2_sign(const QSqrt2& p, const QSqrt2& q, const QSqrt2& g1,
              const QSqrt2& r, const QSqrt2& g2) {
  if (r.is_zero() || g2.is_zero()) return ext_sign({p, q, g1});
  if (q.is_zero() || g1.is_zero()) return ext_sign({p, r, g2});
  if (g1 == g2) return ext_sign({p, q + r, g1});
  if (auto m = (g1 * g2).sqrt_exact())  // sqrt(g2) = (m/g1) * sqrt(g1)
    return ext_sign({p, q + r * (*m / g1), g1});
  // Radicands independent: u = q*sqrt(g1) + r*sqrt(g2) cannot vanish.
  const int sq = q.sign(), sr = r.sign();
  int su;
  if (sq == sr) {
    su = sq;
  } else {
    const int c = (q * q * g1 - r * r * g2).sign();
    if (c == 0) throw MathError("ext2_sign: dependent radicands escaped folding");
    su = c > 0 ? sq : sr;
  }
  const int sp = p.sign();
  if (sp == 0) return su;
  if (sp == su) return sp;
  // Signs of p and u disagree: compare p^2 with
  // u^2 = q^2 g1 + r^2 g2 + 2 q r sqrt(g1 g2), a single-radical value.
  const int c = ext_sign({p * p - q * q * g1 - r * r * g2, -(q * r + q * r), g1 * g2});
  if (c == 0) throw MathError("ext2_sign: |p| == |u| with independent radicands");
  return c > 0 ? sp : su;
}

RealAlgebraic::RealAlgebraic(const Rational& r)
    : poly_(Poly::linear_root(r).primitive_integer()),
      lo_(r - 1),
      hi_(r + 1),
      ext_(ExtQuad{QSqrt2(r), QSqrt2(), QSqrt2()}) {}

RealAlgebraic::RealAlgebraic(const QSqrt2& v)
    : poly_(), lo_(0), hi_(0), ext_(ExtQuad{v, QSqrt2(), QSqrt2()}) {
  if (v.is_rational()) {
    *this = RealAlgebraic(v.r());
    return;
  }
  // Minimal polynomial of r + s*sqrt2, s != 0: t^2 - 2r t + (r^2 - 2 s^2).
  poly_ = Poly({v.norm(), -2 * v.r(), Rational(1)}).primitive_integer();
  auto iso = certify_isolator(poly_, [&v](unsigned long k) { return v.approx(k); });
  lo_ = std::move(iso.first);
  hi_ = std::move(iso.second);
}

RealAlgebraic RealAlgebraic::from_ext(ExtQuad e) {
  if (e.g.sign() < 0) throw MathError("from_ext: negative radicand");
  if (e.q.is_zero() || e.g.is_zero()) return RealAlgebraic(e.p);
  if (auto root = e.g.sqrt_exact()) return RealAlgebraic(e.p + e.q * *root);
  Poly mp = ext_min_poly(e);
  auto iso = certify_isolator(mp, [&e](unsigned long k) { return ext_enclosure(e, k); });
  return RealAlgebraic(std::move(mp), std::move(iso.first), std::move(iso.second),
                       std::move(e));
}

RealAlgebraic RealAlgebraic::quadratic_root(const QSqrt2& A, const QSqrt2& B,
                                            const QSqrt2& C, int branch) {
  if (A.is_zero()) throw MathError("quadratic_root: leading coefficient zero");
  if (branch != 1 && branch != -1) throw MathError("quadratic_root: branch must be +-1");
  const QSqrt2 disc = B * B - QSqrt2(4) * A * C;
  if (disc.sign() < 0) throw MathError("quadratic_root: negative discriminant");
  const QSqrt2 inv2a = (A + A).inv();
  return from_ext({-B * inv2a, branch > 0 ? inv2a : -inv2a, disc});
}

RealAlgebraic RealAlgebraic::from_parts(Poly poly, Rational lo, Rational hi) {
  if (poly.degree() < 1) throw ConfigError("algebraic number: polynomial must be nonconstant");
  if (poly.degree() > 4) throw ConfigError("algebraic number: polynomial degree exceeds 4");
  if (!(lo < hi)) throw ConfigError("algebraic number: empty isolating interval");
  if (Poly::gcd(poly, poly.derivative()).degree() > 0)
    throw ConfigError("algebraic number: polynomial is not square-free");
  if (poly.sign_at(lo) == 0 || poly.sign_at(hi) == 0)
    throw ConfigError("algebraic number: isolator endpoint is a root");
  if (SturmSeq(poly).count(lo, hi) != 1)
    throw ConfigError("algebraic number: interval does not isolate exactly one root");

  std::optional<ExtQuad> ext;
  const auto& c = poly.coeffs();
  if (poly.degree() == 1) {
    ext = ExtQuad{QSqrt2(-c[0] / c[1]), QSqrt2(), QSqrt2()};
  } else if (poly.degree() == 2) {
    // Solve exactly; express the isolated root in closed form.
    const Rational disc = c[1] * c[1] - 4 * c[2] * c[0];
    const Rational two_a = 2 * c[2];
    if (auto d = rat_sqrt_exact(disc)) {
      const Rational roots[2] = {Rational((-c[1] + *d) / two_a), Rational((-c[1] - *d) / two_a)};
      for (const Rational& root : roots)
        if (lo < root && root < hi) ext = ExtQuad{QSqrt2(root), QSqrt2(), QSqrt2()};
    } else if (auto h = rat_sqrt_exact(disc / 2)) {
      for (int b : {1, -1}) {
        const QSqrt2 root(Rational(-c[1] / two_a), Rational(b * *h / two_a));
        if ((root - QSqrt2(lo)).sign() > 0 && (QSqrt2(hi) - root).sign() > 0)
          ext = ExtQuad{root, QSqrt2(), QSqrt2()};
      }
    } else {
      for (int b : {1, -1}) {
        const ExtQuad cand{QSqrt2(Rational(-c[1] / two_a)),
                           QSqrt2(Rational(b / two_a)), QSqrt2(disc)};
        if (ext_sign({cand.p - QSqrt2(lo), cand.q, cand.g}) > 0 &&
            ext_sign({QSqrt2(hi) - cand.p, -cand.q, cand.g}) > 0)
          ext = cand;
      }
    }
    if (!ext) throw MathError("from_parts: no quadratic root lies in the isolator");
  }
  return RealAlgebraic(std::move(poly), std::move(lo), std::move(hi), std::move(ext));
}

int RealAlgebraic::sign() const {
  if (ext_) return ext_sign(*ext_);
  return compare(*this, RealAlgebraic(Rational(0)));
}

int RealAlgebraic::compare(const RealAlgebraic& x, const RealAlgebraic& y) {
  if (x.ext_ && y.ext_)
    return ext2_sign(x.ext_->p - y.ext_->p, x.ext_->q, x.ext_->g, -y.ext_->q, y.ext_->g);

  Rational xlo = x.lo_, xhi = x.hi_, ylo = y.lo_, yhi = y.hi_;
  if (xhi <= ylo) return -1;
  if (yhi <= xlo) return 1;

  // Overlapping isolators: decide equality first via the gcd criterion, then
  // (if unequal) refine until the isolators separate.
  const Poly g = Poly::gcd(x.poly_, y.poly_);
  if (g.degree() >= 1) {
    int rounds = 0;
    while (g.sign_at(xlo) == 0 || g.sign_at(xhi) == 0) {
      refine_step(x.poly_, xlo, xhi);
      if (++rounds > kMaxRefineRounds) throw MathError("alg_compare: endpoint refinement stuck");
    }
    while (g.sign_at(ylo) == 0 || g.sign_at(yhi) == 0) {
      refine_step(y.poly_, ylo, yhi);
      if (++rounds > kMaxRefineRounds) throw MathError("alg_compare: endpoint refinement stuck");
    }
    const SturmSeq sg(g);
    if (sg.count(xlo, xhi) == 1 && sg.count(ylo, yhi) == 1) {
      const Rational olo = std::max(xlo, ylo), ohi = std::min(xhi, yhi);
      if (olo < ohi && sg.count(olo, ohi) == 1) return 0;
    }
  }
  for (int rounds = 0; rounds <= kMaxRefineRounds; ++rounds) {
    if (xhi <= ylo) return -1;
    if (yhi <= xlo) return 1;
    refine_step(x.poly_, xlo, xhi);
    refine_step(y.poly_, ylo, yhi);
  }
  throw MathError("alg_compare: refinement failed to separate distinct values");
}

std::pair<Rational, Rational> RealAlgebraic::approx(const Rational& width) const {
  if (sgn(width) <= 0) throw ConfigError("alg_approx: width must be positive");
  Rational lo = lo_, hi = hi_;
  while (hi - lo > width) refine_step(poly_, lo, hi);
  return {lo, hi};
}

std::optional<Rational> RealAlgebraic::as_rational() const {
  if (ext_) {
    if (ext_->q.is_zero() && ext_->p.is_rational()) return ext_->p.r();
    return std::nullopt;  // ext values with a live radical are irrational
  }
  if (poly_.degree() == 1) return -poly_.coeffs()[0] / poly_.coeffs()[1];
  return std::nullopt;
}

std::optional<QSqrt2> RealAlgebraic::as_qsqrt2() const {
  if (ext_ && ext_->q.is_zero()) return ext_->p;
  if (!ext_ && poly_.degree() == 1)
    return QSqrt2(-poly_.coeffs()[0] / poly_.coeffs()[1]);
  return std::nullopt;
}

std::optional<RealAlgebraic> RealAlgebraic::moebius_image(const QSqrt2& a, const QSqrt2& b,
                                                          const QSqrt2& c, const QSqrt2& d) const {
  const QSqrt2 det = a * d - b * c;
  if (det.is_zero()) throw MathError("moebius_image: singular matrix");
  if (sign_of_linear(c, d) == 0) return std::nullopt;  // x is the pole

  if (ext_) {
    const ExtQuad& e = *ext_;
    const QSqrt2 num_p = a * e.p + b, num_q = a * e.q;
    const QSqrt2 den_p = c * e.p + d, den_q = c * e.q;
    // (num_p + num_q w)/(den_p + den_q w) with w = sqrt(g): rationalize by
    // the conjugate; the conjugate denominator cannot vanish (g non-square).
    const QSqrt2 den2 = den_p * den_p - den_q * den_q * e.g;
    if (den2.is_zero()) throw MathError("moebius_image: conjugate denominator vanished");
    return from_ext({(num_p * den_p - num_q * den_q * e.g) / den2,
                     (num_q * den_p - num_p * den_q) / den2, e.g});
  }

  // General transport: x satisfies poly_, and x = (d y - b)/(a - c y) for
  // y = image(x); substitute and clear denominators, then multiply by the
  // sqrt2-conjugate to land on rational coefficients.
  const int n = poly_.degree();
  const QS2Poly lin_num = qs2_linear(-b, d);   // d y - b
  const QS2Poly lin_den = qs2_linear(a, -c);   // a - c y
  std::vector<QS2Poly> num_pow(n + 1), den_pow(n + 1);
  num_pow[0] = den_pow[0] = QS2Poly{Poly::constant(Rational(1)), Poly()};
  for (int i = 1; i <= n; ++i) {
    num_pow[i] = num_pow[i - 1].mul(lin_num);
    den_pow[i] = den_pow[i - 1].mul(lin_den);
  }
  QS2Poly acc{Poly(), Poly()};
  for (int i = 0; i <= n; ++i) {
    const Rational& ci = poly_.coeffs()[i];
    if (sgn(ci) == 0) continue;
    acc = acc.add(num_pow[i].mul(den_pow[n - i]).scaled(ci));
  }
  const Poly image_poly = acc.conj_product().squarefree();
  const SturmSeq sturm(image_poly);

  const int det_sign = det.sign();
  Rational xlo = lo_, xhi = hi_;
  for (int rounds = 0; rounds <= kMaxRefineRounds; ++rounds) {
    // The map is monotone once the pole leaves [xlo, xhi]; then the images
    // of the endpoints (exact Q(sqrt2) values) bracket the image root.
    const QSqrt2 dlo = c * QSqrt2(xlo) + d, dhi = c * QSqrt2(xhi) + d;
    if (dlo.sign() == 0 || dhi.sign() == 0 || dlo.sign() != dhi.sign()) {
      refine_step(poly_, xlo, xhi);
      continue;
    }
    QSqrt2 ylo = (a * QSqrt2(xlo) + b) / dlo;
    QSqrt2 yhi = (a * QSqrt2(xhi) + b) / dhi;
    if (det_sign < 0) std::swap(ylo, yhi);
    const unsigned long k = 8 + 2 * static_cast<unsigned long>(rounds);
    const Rational rlo = ylo.approx(k).first, rhi = yhi.approx(k).second;
    if (rlo < rhi && image_poly.sign_at(rlo) != 0 && image_poly.sign_at(rhi) != 0 &&
        sturm.count(rlo, rhi) == 1)
      return RealAlgebraic(image_poly, rlo, rhi, std::nullopt);
    refine_step(poly_, xlo, xhi);
  }
  throw MathError("moebius_image: failed to isolate the image root");
}

int RealAlgebraic::sign_of_linear(const QSqrt2& c, const QSqrt2& d) const {
  if (ext_) return ext_sign({c * ext_->p + d, c * ext_->q, ext_->g});
  const Poly p1({d.r(), c.r()}), p2({d.s(), c.s()});
  const int s1 = sign_of_poly_at(p1, *this);
  const int s2 = sign_of_poly_at(p2, *this);
  if (s2 == 0) return s1;
  if (s1 == 0) return s2;
  if (s1 == s2) return s1;
  const int c2 = sign_of_poly_at(p1 * p1 - (p2 * p2).scaled(2), *this);
  if (c2 == 0) throw MathError("sign_of_linear: value in Q(sqrt2) escaped detection");
  return c2 > 0 ? s1 : s2;
}

int sign_of_poly_at(const Poly& f, const RealAlgebraic& x) {
  if (f.is_zero()) return 0;
  if (f.degree() == 0) return sgn(f.coeffs()[0]);

  if (x.ext()) {
    // Horner in the closed ring { u + v*sqrt(g) : u, v in Q(sqrt2) }.
    const ExtQuad& e = *x.ext();
    QSqrt2 u, v;
    for (int i = f.degree(); i >= 0; --i) {
      const QSqrt2 nu = u * e.p + v * e.q * e.g + QSqrt2(f.coeffs()[i]);
      const QSqrt2 nv = u * e.q + v * e.p;
      u = nu;
      v = nv;
    }
    return ext_sign({u, v, e.g});
  }

  Rational lo = x.lo(), hi = x.hi();
  const Poly g = Poly::gcd(f, x.poly());
  if (g.degree() >= 1) {
    int rounds = 0;
    while (g.sign_at(lo) == 0 || g.sign_at(hi) == 0) {
      refine_step(x.poly(), lo, hi);
      if (++rounds > kMaxRefineRounds) throw MathError("sign_of_poly_at: refinement stuck");
    }
    if (SturmSeq(g).count(lo, hi) == 1) return 0;  // f vanishes exactly at x
  }
  const SturmSeq sf(f.squarefree());
  for (int rounds = 0; rounds <= kMaxRefineRounds; ++rounds) {
    const int slo = f.sign_at(lo), shi = f.sign_at(hi);
    if (slo != 0 && slo == shi && sf.count(lo, hi) == 0) return slo;
    refine_step(x.poly(), lo, hi);
  }
  throw MathError("sign_of_poly_at: sign did not stabilize");
}

std::string RealAlgebraic::canonical_key() const {
  if (ext_) {
    const QSqrt2 w = ext_->q * ext_->q * ext_->g;
    const int sq = ext_->q.sign();
    return "E:" + rat_to_string(ext_->p.r()) + "|" + rat_to_string(ext_->p.s()) + "|" +
           rat_to_string(w.r()) + "|" + rat_to_string(w.s()) + "|" +
           (sq == 0 ? "0" : (sq > 0 ? "+" : "-"));
  }
  const Poly prim = poly_.primitive_integer();
  const Rational bound = prim.cauchy_bound();
  int index = 0;
  if (-bound < lo_) index = static_cast<int>(SturmSeq(prim).count(-bound, lo_));
  std::string key = "A:";
  for (const auto& ci : prim.coeffs()) key += rat_to_string(ci) + ",";
  return key + ":" + std::to_string(index);
}

std::string RealAlgebraic::str() const {
  if (ext_ && ext_->q.is_zero()) return ext_->p.str();
  return "root(" + poly_.str() + " | " + rat_to_string(lo_) + ".." + rat_to_string(hi_) + ")";
}

}  // namespace paradec
