/**
 * @file piecewise.cpp
 * @brief Implementation of piecewise projective homeomorphisms.
 */
#include "paradec/piecewise.hpp"

#include <algorithm>
#include <utility>

#include "paradec/errors.hpp"

namespace paradec {

PiecewiseMap::PiecewiseMap(std::vector<RealAlgebraic> breakpoints, std::vector<Mat2> pieces)
    : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (pieces_.size() != breaks_.size() + 1)
    throw ConfigError("piecewise map needs exactly one more piece than breakpoints");
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
    if (RealAlgebraic::compare(breaks_[i], breaks_[i + 1]) >= 0)
      throw ConfigError("piecewise breakpoints must be strictly increasing");
}

std::size_t PiecewiseMap::piece_index_at(const RealAlgebraic& x) const {
  std::size_t idx = 0;
  while (idx < breaks_.size() && RealAlgebraic::compare(breaks_[idx], x) <= 0) ++idx;
  return idx;
}

std::string PiecewiseMap::key() const {
  std::string out = "B";
  for (const RealAlgebraic& b : breaks_) {
    if (!b.ext())
      throw MathError("piecewise key needs quadratically representable breakpoints");
    out += ";" + b.canonical_key();
  }
  out += "#P";
  for (const Mat2& m : pieces_) out += ";" + m.key();
  return out;
}

std::string PiecewiseMap::str() const {
  std::string out;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (i) out += "; ";
    const std::string lo = i == 0 ? "-inf" : breaks_[i - 1].str();
    const std::string hi = i == breaks_.size() ? "inf" : breaks_[i].str();
    out += "(" + lo + "," + hi + ") " + pieces_[i].str();
  }
  return out;
}

PiecewiseMap pw_normalize(const PiecewiseMap& pm) {
  const auto& breaks = pm.breakpoints();
  const auto& pieces = pm.pieces();

  if (!pieces.front().c().is_zero() || !pieces.back().c().is_zero())
    throw MathError("piecewise map does not fix oo (outer piece has c != 0)");
  // Poles: each interior cell [b_{k-1}, b_k] must keep c x + d away from 0;
  // outer pieces are affine by the check above.  Pole-free plus det 1 makes
  // every piece increasing on its cell, so monotonicity needs no extra check.
  for (std::size_t k = 1; k + 1 < pieces.size(); ++k) {
    const Mat2& m = pieces[k];
    if (m.c().is_zero()) continue;
    const int s_lo = breaks[k - 1].sign_of_linear(m.c(), m.d());
    const int s_hi = breaks[k].sign_of_linear(m.c(), m.d());
    if (s_lo == 0 || s_hi == 0 || s_lo != s_hi)
      throw MathError("piece pole inside its cell at breakpoint " + breaks[k - 1].str());
  }
  for (std::size_t k = 0; k < breaks.size(); ++k) {
    const auto left = act(breaks[k], pieces[k]);
    const auto right = act(breaks[k], pieces[k + 1]);
    if (!left || !right || !(*left == *right))
      throw MathError("discontinuity at breakpoint " + breaks[k].str());
  }

  std::vector<RealAlgebraic> nb;
  std::vector<Mat2> np;
  np.push_back(pieces[0]);
  for (std::size_t k = 0; k < breaks.size(); ++k) {
    if (pieces[k + 1] == np.back()) continue;  // redundant breakpoint
    nb.push_back(breaks[k]);
    np.push_back(pieces[k + 1]);
  }
  return PiecewiseMap(std::move(nb), std::move(np));
}

namespace {

/// The unique x with f(x) = y for an increasing homeomorphism fixing oo.
RealAlgebraic pw_preimage(const PiecewiseMap& f, const RealAlgebraic& y) {
  const auto& breaks = f.breakpoints();
  const auto& pieces = f.pieces();
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const Mat2 inv = invert(pieces[k]);
    const auto x = y.moebius_image(inv.a(), inv.b(), inv.c(), inv.d());
    if (!x) continue;  // y is this piece's image of oo
    if (k > 0 && RealAlgebraic::compare(*x, breaks[k - 1]) < 0) continue;
    if (k < breaks.size() && RealAlgebraic::compare(*x, breaks[k]) > 0) continue;
    return *x;
  }
  throw MathError("piecewise preimage not found for " + y.str());
}

}  // namespace

PiecewiseMap pw_compose(const PiecewiseMap& f, const PiecewiseMap& g) {
  std::vector<RealAlgebraic> cuts = f.breakpoints();
  for (const RealAlgebraic& gb : g.breakpoints()) cuts.push_back(pw_preimage(f, gb));
  std::sort(cuts.begin(), cuts.end(), [](const RealAlgebraic& x, const RealAlgebraic& y) {
    return RealAlgebraic::compare(x, y) < 0;
  });
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](const RealAlgebraic& x, const RealAlgebraic& y) { return x == y; }),
             cuts.end());

  // No cut cell contains an f-breakpoint or an f-preimage of a g-breakpoint
  // in its interior, so piece indices are decided by the cell's left end.
  std::vector<Mat2> pieces;
  pieces.reserve(cuts.size() + 1);
  for (std::size_t i = 0; i <= cuts.size(); ++i) {
    std::size_t f_idx, g_idx;
    if (i == 0) {
      // Left ray: every g-breakpoint preimage is a cut, so none lies below
      // the first cut and both indices are 0.
      f_idx = 0;
      g_idx = 0;
    } else {
      f_idx = f.piece_index_at(cuts[i - 1]);
      const auto img = act(cuts[i - 1], f.pieces()[f_idx]);
      g_idx = g.piece_index_at(*img);
    }
    pieces.push_back(compose(f.pieces()[f_idx], g.pieces()[g_idx]));
  }
  return pw_normalize(PiecewiseMap(std::move(cuts), std::move(pieces)));
}

PiecewiseMap pw_invert(const PiecewiseMap& f) {
  std::vector<RealAlgebraic> breaks;
  std::vector<Mat2> pieces;
  pieces.push_back(invert(f.pieces()[0]));
  for (std::size_t k = 0; k < f.breakpoints().size(); ++k) {
    breaks.push_back(*act(f.breakpoints()[k], f.pieces()[k]));
    pieces.push_back(invert(f.pieces()[k + 1]));
  }
  return pw_normalize(PiecewiseMap(std::move(breaks), std::move(pieces)));
}

bool pw_equal(const PiecewiseMap& f, const PiecewiseMap& g) {
  if (f.breakpoints().size() != g.breakpoints().size()) return false;
  for (std::size_t i = 0; i < f.breakpoints().size(); ++i)
    if (f.breakpoints()[i] != g.breakpoints()[i]) return false;
  for (std::size_t i = 0; i < f.pieces().size(); ++i)
    if (f.pieces()[i] != g.pieces()[i]) return false;
  return true;
}

ProjPoint pw_act(const ProjPoint& x, const PiecewiseMap& f) {
  if (!x) return std::nullopt;
  return act(x, f.pieces()[f.piece_index_at(*x)]);
}

namespace {

bool is_dyadic(const Rational& q) {
  const Integer den = q.get_den();
  return mpz_popcount(den.get_mpz_t()) == 1;  // canonical positive denominator
}

}  // namespace

ValidationReport pw_validate(const PiecewiseMap& pm, Ring ring) {
  ValidationReport rep;
  const auto& breaks = pm.breakpoints();
  const auto& pieces = pm.pieces();

  if (!pieces.front().c().is_zero() || !pieces.back().c().is_zero())
    rep.violations.push_back("outer piece does not fix oo");
  for (std::size_t k = 1; k + 1 < pieces.size(); ++k) {
    const Mat2& m = pieces[k];
    if (m.c().is_zero()) continue;
    const int s_lo = breaks[k - 1].sign_of_linear(m.c(), m.d());
    const int s_hi = breaks[k].sign_of_linear(m.c(), m.d());
    if (s_lo == 0 || s_hi == 0 || s_lo != s_hi)
      rep.violations.push_back("pole of piece " + std::to_string(k) + " inside its cell");
  }
  for (std::size_t k = 0; k < breaks.size(); ++k) {
    const auto left = act(breaks[k], pieces[k]);
    const auto right = act(breaks[k], pieces[k + 1]);
    if (!left || !right || !(*left == *right))
      rep.violations.push_back("discontinuity at breakpoint " + breaks[k].str());
    if (pieces[k] == pieces[k + 1])
      rep.violations.push_back("redundant breakpoint " + breaks[k].str() +
                               " (adjacent pieces equal)");
  }
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const Mat2& m = pieces[k];
    for (const QSqrt2* e : {&m.a(), &m.b(), &m.c(), &m.d()}) {
      const bool in_ring = ring == Ring::integers
                               ? sgn(e->s()) == 0 && e->r().get_den() == 1
                               : is_dyadic(e->r()) && is_dyadic(e->s());
      if (!in_ring) {
        rep.violations.push_back("entry " + e->str() + " of piece " + std::to_string(k) +
                                 " outside the declared ring");
        break;
      }
    }
  }
  if (ring == Ring::integers)
    for (const RealAlgebraic& b : breaks)
      if (!b.as_rational())
        rep.violations.push_back("irrational breakpoint " + b.str() + " under integer ring");
  return rep;
}

std::vector<PiecewiseMap> builtin_generators(const std::string& name) {
  const QSqrt2 one(Rational(1)), zero;
  if (name == "thompson-f") {
    // Standard generators in the piecewise-PSL2(Z) model of F acting on R:
    // x0 is the unit translation; x1 is the identity left of 0 and a unit
    // translation right of 1, glued by two PSL2(Z) pieces.
    const PiecewiseMap x0({}, {Mat2(one, one, zero, one)});
    Rational half(1, 2);
    const PiecewiseMap x1(
        {RealAlgebraic(Rational(0)), RealAlgebraic(half), RealAlgebraic(Rational(1))},
        {Mat2::identity(), Mat2(one, zero, -one, one), Mat2(QSqrt2(Rational(3)), -one, one, zero),
         Mat2(one, one, zero, one)});
    return {pw_normalize(x0), pw_normalize(x1)};
  }
  if (name.rfind("translation(", 0) == 0 && name.back() == ')') {
    const Rational r = rat_parse(name.substr(12, name.size() - 13));
    return {pw_normalize(PiecewiseMap({}, {Mat2(one, QSqrt2(r), zero, one)}))};
  }
  if (name == "gamma-conjugators") {
    // Conjugates of the unit translation by the diagonal (sqrt2, 1/sqrt2)
    // matrix and its inverse: translations by 2 and by 1/2.
    return {pw_normalize(PiecewiseMap({}, {Mat2(one, QSqrt2(Rational(2)), zero, one)})),
            pw_normalize(PiecewiseMap({}, {Mat2(one, QSqrt2(Rational(1, 2)), zero, one)}))};
  }
  throw ConfigError("unknown builtin generator family: '" + name + "'");
}

PiecewiseMap splice_lift(const Mat2& m, const RealAlgebraic& lo, const RealAlgebraic& hi) {
  if (RealAlgebraic::compare(lo, hi) > 0) throw MathError("splice_lift: empty interval");
  const Classification cls = classify(m);
  if (cls.kind != MatClass::hyperbolic)
    throw MathError("splice_lift needs a hyperbolic matrix, got " + m.str());
  if (cls.fixed.size() != 2 || !cls.fixed[0] || !cls.fixed[1])
    throw MathError("splice_lift: fixed point of " + m.str() + " at oo");
  const RealAlgebraic& xi1 = *cls.fixed[0];
  const RealAlgebraic& xi2 = *cls.fixed[1];
  if (RealAlgebraic::compare(xi1, lo) >= 0 || RealAlgebraic::compare(hi, xi2) >= 0)
    throw MathError("splice_lift: fixed points " + xi1.str() + ", " + xi2.str() +
                    " do not flank the interval");
  return pw_normalize(PiecewiseMap({xi1, xi2}, {Mat2::identity(), m, Mat2::identity()}));
}

IntervalSet pushforward(const IntervalSet& j, const PiecewiseMap& f) {
  std::vector<Interval> images;
  for (const Interval& iv : j.intervals()) {
    RealAlgebraic left = iv.lo;
    std::size_t idx = f.piece_index_at(left);
    // Split at each breakpoint interior to [lo, hi), mapping fragment by fragment.
    while (idx < f.breakpoints().size() &&
           RealAlgebraic::compare(f.breakpoints()[idx], iv.hi) < 0) {
      const RealAlgebraic& cut = f.breakpoints()[idx];
      images.push_back(Interval{*act(left, f.pieces()[idx]), *act(cut, f.pieces()[idx])});
      left = cut;
      ++idx;
    }
    images.push_back(Interval{*act(left, f.pieces()[idx]), *act(iv.hi, f.pieces()[idx])});
  }
  return IntervalSet::from_pieces(std::move(images));
}

}  // namespace paradec
