/**
 * @file interval_set.cpp
 * @brief Exact interval-set algebra, measure accumulation, and pushforwards.
 */
#include "paradec/interval_set.hpp"

#include <algorithm>

#include "paradec/errors.hpp"

namespace paradec {

namespace {

bool ra_less(const RealAlgebraic& x, const RealAlgebraic& y) {
  return RealAlgebraic::compare(x, y) < 0;
}

}  // namespace

IntervalSet IntervalSet::from_pieces(std::vector<Interval> pieces) {
  std::erase_if(pieces,
                [](const Interval& iv) { return RealAlgebraic::compare(iv.lo, iv.hi) >= 0; });
  std::sort(pieces.begin(), pieces.end(),
            [](const Interval& x, const Interval& y) { return ra_less(x.lo, y.lo); });
  IntervalSet out;
  for (auto& iv : pieces) {
    if (!out.parts_.empty()) {
      Interval& last = out.parts_.back();
      if (RealAlgebraic::compare(iv.lo, last.hi) <= 0) {  // overlap or touch: merge
        if (RealAlgebraic::compare(iv.hi, last.hi) > 0) last.hi = iv.hi;
        continue;
      }
    }
    out.parts_.push_back(std::move(iv));
  }
  return out;
}

IntervalSet IntervalSet::interval(const RealAlgebraic& lo, const RealAlgebraic& hi) {
  return from_pieces({Interval{lo, hi}});
}

bool IntervalSet::contains(const RealAlgebraic& x) const {
  for (const Interval& iv : parts_)
    if (RealAlgebraic::compare(iv.lo, x) <= 0 && RealAlgebraic::compare(x, iv.hi) < 0) return true;
  return false;
}

bool IntervalSet::operator==(const IntervalSet& o) const {
  if (parts_.size() != o.parts_.size()) return false;
  for (std::size_t i = 0; i < parts_.size(); ++i)
    if (parts_[i].lo != o.parts_[i].lo || parts_[i].hi != o.parts_[i].hi) return false;
  return true;
}

std::string IntervalSet::str() const {
  if (parts_.empty()) return "{}";
  std::string out;
  for (const Interval& iv : parts_) {
    if (!out.empty()) out += " u ";
    out += "[" + iv.lo.str() + ", " + iv.hi.str() + ")";
  }
  return out;
}

namespace {

/// Shared sweep: collects the distinct endpoints of both operands, walks the
/// elementary segments between consecutive endpoints, and keeps a segment
/// when keep(in_a, in_b) says so.  Segments never straddle an operand's
/// endpoint, so membership of the left endpoint decides the whole segment.
template <typename Keep>
IntervalSet sweep(const IntervalSet& a, const IntervalSet& b, Keep keep) {
  std::vector<RealAlgebraic> events;
  for (const IntervalSet* s : {&a, &b})
    for (const Interval& iv : s->intervals()) {
      events.push_back(iv.lo);
      events.push_back(iv.hi);
    }
  std::sort(events.begin(), events.end(), ra_less);
  events.erase(std::unique(events.begin(), events.end(),
                           [](const RealAlgebraic& x, const RealAlgebraic& y) { return x == y; }),
               events.end());
  std::vector<Interval> kept;
  for (std::size_t i = 0; i + 1 < events.size(); ++i)
    if (keep(a.contains(events[i]), b.contains(events[i])))
      kept.push_back(Interval{events[i], events[i + 1]});
  return IntervalSet::from_pieces(std::move(kept));
}

}  // namespace

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b) {
  return sweep(a, b, [](bool x, bool y) { return x || y; });
}

IntervalSet set_intersect(const IntervalSet& a, const IntervalSet& b) {
  return sweep(a, b, [](bool x, bool y) { return x && y; });
}

IntervalSet set_subtract(const IntervalSet& a, const IntervalSet& b) {
  return sweep(a, b, [](bool x, bool y) { return x && !y; });
}

bool set_contains(const IntervalSet& a, const IntervalSet& b) {
  return set_subtract(b, a).empty();
}

void RadicalSum::add_term(const QSqrt2& coeff, const QSqrt2& radicand) {
  if (coeff.is_zero()) return;
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    // Same square class iff the product of radicands is a square; then
    // sqrt(radicand) = (m / existing) * sqrt(existing) with m the positive root.
    if (auto m = (radicand * it->first).sqrt_exact()) {
      it->second += coeff * (*m / it->first);
      if (it->second.is_zero()) terms_.erase(it);
      return;
    }
  }
  terms_.emplace_back(radicand, coeff);
}

RadicalSum& RadicalSum::operator+=(const RealAlgebraic& v) {
  const auto e = v.ext();
  if (!e) throw MathError("measure endpoint lacks a quadratic closed form: " + v.str());
  base_ += e->p;
  if (!e->q.is_zero()) add_term(e->q, e->g);
  return *this;
}

RadicalSum& RadicalSum::operator-=(const RealAlgebraic& v) {
  const auto e = v.ext();
  if (!e) throw MathError("measure endpoint lacks a quadratic closed form: " + v.str());
  base_ -= e->p;
  if (!e->q.is_zero()) add_term(-e->q, e->g);
  return *this;
}

RadicalSum& RadicalSum::operator+=(const RadicalSum& o) {
  base_ += o.base_;
  for (const auto& [radicand, coeff] : o.terms_) add_term(coeff, radicand);
  return *this;
}

RadicalSum& RadicalSum::operator-=(const RadicalSum& o) {
  base_ -= o.base_;
  for (const auto& [radicand, coeff] : o.terms_) add_term(-coeff, radicand);
  return *this;
}

RadicalSum RadicalSum::scaled(const QSqrt2& k) const {
  RadicalSum out;
  if (k.is_zero()) return out;
  out.base_ = base_ * k;
  out.terms_ = terms_;
  for (auto& [radicand, coeff] : out.terms_) coeff *= k;
  return out;
}

bool RadicalSum::is_zero() const { return base_.is_zero() && terms_.empty(); }

int RadicalSum::sign() const {
  if (terms_.empty()) return base_.sign();
  if (terms_.size() == 1)
    return ext_sign(ExtQuad{base_, terms_[0].second, terms_[0].first});
  if (terms_.size() == 2)
    return ext2_sign(base_, terms_[0].second, terms_[0].first, terms_[1].second, terms_[1].first);
  // Three or more independent radicals: the value is provably nonzero, so a
  // shrinking enclosure eventually separates it from zero.
  for (unsigned long k = 16;; k *= 2) {
    const auto [lo, hi] = approx(rat_pow2(-static_cast<long>(k)));
    if (sgn(lo) > 0) return +1;
    if (sgn(hi) < 0) return -1;
    if (k > 1u << 14)
      throw MathError("radical sum sign: enclosure failed to separate from zero");
  }
}

int RadicalSum::compare(const RadicalSum& x, const RadicalSum& y) {
  RadicalSum d = x;
  d -= y;
  return d.sign();
}

std::optional<QSqrt2> RadicalSum::as_qsqrt2() const {
  if (terms_.empty()) return base_;
  return std::nullopt;
}

std::pair<Rational, Rational> RadicalSum::approx(const Rational& width) const {
  if (sgn(width) <= 0) throw ConfigError("enclosure width must be positive");
  for (unsigned long k = 8;; k *= 2) {
    auto [lo, hi] = base_.approx(k);
    for (const auto& [radicand, coeff] : terms_) {
      // coeff * sqrt(radicand), outer-rounded from factor enclosures.
      const auto [clo, chi] = coeff.approx(k);
      const auto [rlo0, rhi] = radicand.approx(k);
      const Rational rlo = sgn(rlo0) < 0 ? Rational(0) : rlo0;
      const Rational slo = rat_sqrt_bounds(rlo, k).first;
      const Rational shi = rat_sqrt_bounds(rhi, k).second;
      const Rational products[4] = {Rational(clo * slo), Rational(clo * shi),
                                    Rational(chi * slo), Rational(chi * shi)};
      lo += std::min(std::min(products[0], products[1]), std::min(products[2], products[3]));
      hi += std::max(std::max(products[0], products[1]), std::max(products[2], products[3]));
    }
    if (hi - lo <= width) return {lo, hi};
    if (k > 1u << 20) throw MathError("radical sum enclosure did not converge");
  }
}

std::string RadicalSum::str() const {
  std::string out = base_.str();
  for (const auto& [radicand, coeff] : terms_)
    out += " + (" + coeff.str() + ")*sqrt(" + radicand.str() + ")";
  return out;
}

RadicalSum measure(const IntervalSet& a) {
  RadicalSum total;
  for (const Interval& iv : a.intervals()) {
    total += iv.hi;
    total -= iv.lo;
  }
  return total;
}

IntervalSet pushforward(const IntervalSet& j, const Mat2& g) {
  std::vector<Interval> images;
  for (const Interval& iv : j.intervals()) {
    if (!g.c().is_zero()) {
      const int s_lo = iv.lo.sign_of_linear(g.c(), g.d());
      const int s_hi = iv.hi.sign_of_linear(g.c(), g.d());
      if (s_lo == 0 || s_hi == 0 || s_lo != s_hi)
        throw MathError("pushforward: pole of " + g.str() + " meets " + iv.lo.str() + ".." +
                        iv.hi.str());
    }
    auto lo = iv.lo.moebius_image(g.a(), g.b(), g.c(), g.d());
    auto hi = iv.hi.moebius_image(g.a(), g.b(), g.c(), g.d());
    // Pole-free intervals map monotonically; endpoints stay finite.
    images.push_back(Interval{*lo, *hi});
  }
  return IntervalSet::from_pieces(std::move(images));
}

}  // namespace paradec
