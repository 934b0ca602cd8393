/**
 * @file distortion.cpp
 * @brief Distortion certificates, exact ratio checks, and the pigeonhole
 *        coverage computation.
 */
#include "paradec/distortion.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "paradec/errors.hpp"

namespace paradec {

namespace {

/// Both certificate inequalities for s = (R+1)/n, as exact rational tests:
/// (1-s)^2 (1+eps) > 1 and (1+s)^2 (1-eps) < 1, with s < 1.
bool cert_closes(const Rational& r_plus_1, const Rational& epsilon, long n) {
  const Rational s(r_plus_1 / Rational(n));
  if (!(s < 1)) return false;
  const Rational below(Rational(1) - s);
  const Rational above(Rational(1) + s);
  const Rational upper_margin(below * below * (Rational(1) + epsilon));
  const Rational lower_margin(above * above * (Rational(1) - epsilon));
  return upper_margin > 1 && lower_margin < 1;
}

int pole_status(const Mat2& g, const RealAlgebraic& lo, const RealAlgebraic& hi) {
  if (g.c().is_zero()) return 1;
  const int s_lo = lo.sign_of_linear(g.c(), g.d());
  const int s_hi = hi.sign_of_linear(g.c(), g.d());
  return (s_lo != 0 && s_lo == s_hi) ? 1 : 0;
}

}  // namespace

DistortionCert distortion_delta(const Rational& i_lo, const Rational& i_hi,
                                const Rational& epsilon) {
  if (i_lo > i_hi) throw ConfigError("distortion interval is empty");
  if (!(epsilon > 0) || !(epsilon < 1))
    throw ConfigError("epsilon out of range (0, 1): " + rat_to_string(epsilon));

  const Rational radius(std::max(Rational(abs(i_lo)), Rational(abs(i_hi))));
  const Rational r_plus_1(radius + 1);

  long hi = 1;
  while (!cert_closes(r_plus_1, epsilon, hi)) {
    if (hi > (1L << 60)) throw MathError("distortion delta search exhausted");
    hi *= 2;
  }
  long lo = hi / 2;  // lo fails (or is 0), hi closes
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    (cert_closes(r_plus_1, epsilon, mid) ? hi : lo) = mid;
  }

  DistortionCert cert;
  cert.i_lo = i_lo;
  cert.i_hi = i_hi;
  cert.epsilon = epsilon;
  cert.delta = Rational(1, hi);
  cert.radius = radius;
  const Rational s(r_plus_1 / Rational(hi));
  const Rational below(Rational(1) - s);
  const Rational above(Rational(1) + s);
  cert.deriv_lo = Rational(1 / (above * above));
  cert.deriv_hi = Rational(1 / (below * below));
  return cert;
}

DistortionCheck check_distortion(const Mat2& g, const RealAlgebraic& i_lo,
                                 const RealAlgebraic& i_hi,
                                 const IntervalSet& j,
                                 const Rational& epsilon) {
  if (!(epsilon > 0) || !(epsilon < 1))
    throw ConfigError("epsilon out of range (0, 1): " + rat_to_string(epsilon));
  if (j.empty()) throw ConfigError("empty J: distortion ratio is undefined");
  if (!set_contains(IntervalSet::interval(i_lo, i_hi), j))
    throw ConfigError("J is not contained in the base interval");
  if (pole_status(g, i_lo, i_hi) == 0)
    throw ConfigError("pole of the map meets the base interval");

  const RadicalSum num = measure(pushforward(j, g));
  const RadicalSum den = measure(j);

  DistortionCheck out;
  out.pass = den.scaled(QSqrt2(Rational(1) - epsilon)) < num &&
             num < den.scaled(QSqrt2(Rational(1) + epsilon));

  const auto nq = num.as_qsqrt2();
  const auto dq = den.as_qsqrt2();
  if (nq && dq) out.ratio = *nq / *dq;

  // Enclose the ratio by shrinking enclosures of both measures; mu(J) > 0
  // guarantees the denominator bound goes positive.
  Rational width(1, 1024);
  const Rational target(1, 1000000);
  for (;;) {
    const auto nb = num.approx(width);
    const auto db = den.approx(width);
    if (db.first > 0) {
      const Rational r_lo(nb.first >= 0 ? Rational(nb.first / db.second)
                                        : Rational(nb.first / db.first));
      const Rational r_hi(nb.second >= 0 ? Rational(nb.second / db.first)
                                         : Rational(nb.second / db.second));
      if (Rational(r_hi - r_lo) <= target) {
        out.ratio_lo = r_lo;
        out.ratio_hi = r_hi;
        return out;
      }
    }
    width /= 1024;
    if (width < rat_pow2(-200))
      throw MathError("distortion ratio enclosure failed to shrink");
  }
}

PigeonholeWitness pigeonhole_witness(const Rational& i_lo,
                                     const Rational& i_hi,
                                     const IntervalSet& j,
                                     const std::vector<Mat2>& gs) {
  if (gs.size() != 6)
    throw ConfigError("pigeonhole needs exactly six maps, got " +
                      std::to_string(gs.size()));
  if (!(i_lo < i_hi)) throw ConfigError("pigeonhole base interval is empty");

  const RealAlgebraic a_lo(i_lo);
  const RealAlgebraic a_hi(i_hi);
  const IntervalSet iset_i = IntervalSet::interval(a_lo, a_hi);
  const RadicalSum mu_i = measure(iset_i);

  // I' is the concentric interval scaled by 1 + 1/48.
  const Rational mid(Rational(i_lo + i_hi) / 2);
  const Rational half(Rational(Rational(i_hi - i_lo) / 2) * Rational(49, 48));
  const IntervalSet iset_ip = IntervalSet::interval(
      RealAlgebraic(Rational(mid - half)), RealAlgebraic(Rational(mid + half)));

  const RealAlgebraic bound_lo((Rational(47, 48)));
  const RealAlgebraic bound_hi((Rational(49, 48)));

  std::vector<std::string> fails;
  if (!set_contains(iset_i, j)) fails.push_back("J is not contained in I");
  if (measure(j).scaled(QSqrt2(Rational(2))) < mu_i)
    fails.push_back("mu(J) < mu(I)/2");

  std::vector<Mat2> inv_maps;
  inv_maps.reserve(6);
  for (int i = 1; i <= 6; ++i) {
    const Mat2 inv = invert(gs[static_cast<size_t>(i - 1)]);
    inv_maps.push_back(inv);
    const std::string tag = "g_" + std::to_string(i) + "^-1";
    try {
      const auto db = derivative_bounds(inv, a_lo, a_hi);
      if (!(db.first > bound_lo) || !(db.second < bound_hi)) {
        fails.push_back("derivative range of " + tag +
                        " on I escapes (1-1/48, 1+1/48)");
        continue;
      }
    } catch (const MathError&) {
      fails.push_back("pole of " + tag + " meets I");
      continue;
    }
    if (!set_contains(iset_ip, pushforward(iset_i, inv)))
      fails.push_back("I*" + tag + " escapes I'");
  }
  if (!fails.empty()) {
    std::string msg = "pigeonhole preconditions violated: " + fails[0];
    for (size_t k = 1; k < fails.size(); ++k) msg += "; " + fails[k];
    throw ConfigError(msg);
  }

  // L_i = (J * g_i^-1) ∩ I with g_0 the identity.
  std::vector<IntervalSet> ls;
  ls.reserve(7);
  ls.push_back(j);
  for (const Mat2& inv : inv_maps)
    ls.push_back(set_intersect(pushforward(j, inv), iset_i));

  RadicalSum total;
  for (const IntervalSet& li : ls) total += measure(li);
  const RadicalSum gate = mu_i.scaled(QSqrt2(Rational(3)));
  if (!(total > gate))
    throw MathError(
        "pigeonhole integral bound failed despite verified preconditions "
        "(arithmetic bug)");

  // Endpoint arrangement: cells between consecutive distinct endpoints carry
  // a constant coverage set, decided at the left endpoint.
  std::vector<RealAlgebraic> events;
  for (const IntervalSet& li : ls)
    for (const Interval& iv : li.intervals()) {
      events.push_back(iv.lo);
      events.push_back(iv.hi);
    }
  std::sort(events.begin(), events.end(),
            [](const RealAlgebraic& x, const RealAlgebraic& y) {
              return RealAlgebraic::compare(x, y) < 0;
            });
  std::vector<RealAlgebraic> uniq;
  for (const RealAlgebraic& e : events)
    if (uniq.empty() || RealAlgebraic::compare(uniq.back(), e) != 0)
      uniq.push_back(e);

  RadicalSum by_cells;
  std::map<std::vector<int>, std::vector<Interval>> groups;
  for (size_t k = 0; k + 1 < uniq.size(); ++k) {
    std::vector<int> cover;
    for (int i = 0; i <= 6; ++i)
      if (ls[static_cast<size_t>(i)].contains(uniq[k])) cover.push_back(i);
    if (cover.empty()) continue;
    RadicalSum cell_measure;
    cell_measure += uniq[k + 1];
    cell_measure -= uniq[k];
    by_cells += cell_measure.scaled(QSqrt2(Rational(static_cast<long>(cover.size()))));
    if (cover.size() >= 4) groups[cover].push_back({uniq[k], uniq[k + 1]});
  }
  if (!(total == by_cells))
    throw MathError("pigeonhole coverage identity failed (arithmetic bug)");
  if (groups.empty())
    throw MathError(
        "no coverage-4 cell despite verified integral bound (arithmetic bug)");

  // Maximal-measure group; map order breaks ties toward the lexicographically
  // least coverage set, deterministically.
  const std::vector<int>* best_key = nullptr;
  IntervalSet best_set;
  RadicalSum best_measure;
  for (const auto& [key, cells] : groups) {
    IntervalSet candidate = IntervalSet::from_pieces(cells);
    RadicalSum m = measure(candidate);
    if (best_key == nullptr || m > best_measure) {
      best_key = &key;
      best_set = candidate;
      best_measure = m;
    }
  }

  PigeonholeWitness out;
  out.cell_union = best_set;
  out.coverage = *best_key;
  for (int k = 0; k < 4; ++k)
    out.indices[static_cast<size_t>(k)] = (*best_key)[static_cast<size_t>(k)];
  out.total = total;
  out.gate = gate;

  if (!(best_measure.sign() > 0))
    throw MathError("pigeonhole witness has zero measure (arithmetic bug)");
  for (const int idx : out.indices) {
    const Mat2 m = idx == 0 ? Mat2::identity() : gs[static_cast<size_t>(idx - 1)];
    if (!set_contains(j, pushforward(out.cell_union, m)))
      throw MathError("pigeonhole witness containment failed (arithmetic bug)");
  }
  return out;
}

}  // namespace paradec
