/**
 * @file test_distortion.cpp
 * @brief Distortion certificates (largest closing 1/n), exact measure-ratio
 *        checks, and pigeonhole coverage witnesses with independent rechecks.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "paradec/distortion.hpp"
#include "paradec/errors.hpp"
#include "paradec/interval_set.hpp"
#include "paradec/mat2.hpp"
#include "paradec/rng.hpp"

using namespace paradec;

namespace {

Rational rat(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

QSqrt2 q(long n, long d = 1) { return QSqrt2(rat(n, d)); }

RealAlgebraic ra(long n, long d = 1) { return RealAlgebraic(rat(n, d)); }

Mat2 translation(const QSqrt2& r) { return Mat2(q(1), r, q(0), q(1)); }

IntervalSet iv(const RealAlgebraic& lo, const RealAlgebraic& hi) {
  return IntervalSet::interval(lo, hi);
}

long signed_draw(Rng& rng, long mag) {
  return static_cast<long>(rng.uniform(0, static_cast<std::uint64_t>(2 * mag))) - mag;
}

/// Random map with entry distance below 9/den: a translation, a lower
/// parabolic, or a determinant-1 fill-in (1 b; c 1+bc).
Mat2 random_small(Rng& rng, long den) {
  const Rational b = rat(signed_draw(rng, 9), den);
  const Rational c = rat(signed_draw(rng, 9), den);
  switch (rng.index(3)) {
    case 0: return Mat2(q(1), QSqrt2(b), q(0), q(1));
    case 1: return Mat2(q(1), q(0), QSqrt2(c), q(1));
    default: return Mat2(q(1), QSqrt2(b), QSqrt2(c), QSqrt2(Rational(b * c + 1)));
  }
}

/// Union of 1-4 intervals with endpoints at multiples of 1/40 inside [0,1].
IntervalSet random_subset(Rng& rng) {
  std::vector<Interval> parts;
  const long n = 1 + rng.index(4);
  for (long k = 0; k < n; ++k) {
    const long a = rng.index(40);
    const long b = a + 1 + rng.index(40 - a);
    parts.push_back({ra(a, 40), ra(b, 40)});
  }
  return IntervalSet::from_pieces(parts);
}

}  // namespace

TEST_CASE("certificate: largest closing 1/n with exact derivative range") {
  const DistortionCert half = distortion_delta(rat(0), rat(1), rat(1, 2));
  CHECK(half.delta == rat(1, 11));
  CHECK(half.radius == rat(1));
  CHECK(half.deriv_lo == rat(121, 169));  // (1 + 2/11)^-2
  CHECK(half.deriv_hi == rat(121, 81));   // (1 - 2/11)^-2
  CHECK(half.deriv_lo > rat(1, 2));
  CHECK(half.deriv_hi < rat(3, 2));

  // The coarser delta = 1/20 also closes: both window inequalities hold.
  CHECK(rat(9, 10) * rat(9, 10) * rat(3, 2) > 1);
  CHECK(rat(11, 10) * rat(11, 10) * rat(1, 2) < 1);
  CHECK(half.delta >= rat(1, 20));

  const DistortionCert tight = distortion_delta(rat(0), rat(1), rat(1, 48));
  CHECK(tight.delta == rat(1, 195));
  // Upper margin is razor thin: (193/195)^2 * (49/48) = 1825201/1825200.
  CHECK(rat(37249, 38025) * rat(49, 48) == rat(1825201, 1825200));
  // 1/194 would fail the upper inequality, so 1/195 is maximal.
  CHECK(rat(96, 97) * rat(96, 97) * rat(49, 48) < 1);
  CHECK(tight.deriv_lo > rat(47, 48));
  CHECK(tight.deriv_hi < rat(49, 48));

  // Wider base interval: R = 3, so (R+1)/n replays the R = 1 case at n = 22.
  const DistortionCert wide = distortion_delta(rat(-3), rat(2), rat(1, 2));
  CHECK(wide.radius == rat(3));
  CHECK(wide.delta == rat(1, 22));

  // Tiny epsilon still terminates promptly (binary search, exact tests).
  const DistortionCert tiny = distortion_delta(rat(0), rat(1), rat(1, 1000000));
  CHECK(tiny.delta > 0);
  CHECK(tiny.deriv_hi < rat(1000001, 1000000));
  CHECK(tiny.deriv_lo > rat(999999, 1000000));

  CHECK_THROWS_AS(distortion_delta(rat(0), rat(1), rat(0)), ConfigError);
  CHECK_THROWS_AS(distortion_delta(rat(0), rat(1), rat(1)), ConfigError);
  CHECK_THROWS_AS(distortion_delta(rat(0), rat(1), rat(2)), ConfigError);
  CHECK_THROWS_AS(distortion_delta(rat(1), rat(0), rat(1, 2)), ConfigError);
}

TEST_CASE("ratio check: translations and the identity are neutral") {
  const IntervalSet j = set_union(iv(ra(0), ra(1, 3)), iv(ra(1, 2), ra(1)));
  const auto neutral = check_distortion(Mat2::identity(), ra(0), ra(1), j, rat(1, 48));
  CHECK(neutral.pass);
  REQUIRE(neutral.ratio.has_value());
  CHECK(*neutral.ratio == q(1));

  const auto shifted = check_distortion(translation(q(7, 5)), ra(0), ra(1), j, rat(1, 48));
  CHECK(shifted.pass);
  REQUIRE(shifted.ratio.has_value());
  CHECK(*shifted.ratio == q(1));
  CHECK(shifted.ratio_lo <= 1);
  CHECK(shifted.ratio_hi >= 1);
  CHECK(Rational(shifted.ratio_hi - shifted.ratio_lo) <= rat(1, 1000000));
}

TEST_CASE("ratio check: far-from-identity maps land outside the window") {
  // x -> x/(x+1) halves [0,1); ratio exactly 1/2, well outside 1 +- 1/48.
  const auto halved =
      check_distortion(Mat2(q(1), q(0), q(1), q(1)), ra(0), ra(1), iv(ra(0), ra(1)), rat(1, 48));
  CHECK_FALSE(halved.pass);
  REQUIRE(halved.ratio.has_value());
  CHECK(*halved.ratio == q(1, 2));
  CHECK(halved.ratio_lo <= rat(1, 2));
  CHECK(halved.ratio_hi >= rat(1, 2));

  // The dilation x -> 2x doubles any subset; exact ratio 2 even when the
  // measure itself is irrational.
  const Mat2 gamma(QSqrt2::sqrt2(), q(0), q(0), QSqrt2(Rational(0), Rational(1, 2)));
  const RealAlgebraic root2m1 =
      RealAlgebraic::quadratic_root(q(1), q(0), q(-2), +1).moebius_image(q(1), q(-1), q(0), q(1)).value();
  const auto doubled = check_distortion(gamma, ra(0), ra(1), iv(ra(0), root2m1), rat(1, 2));
  CHECK_FALSE(doubled.pass);
  REQUIRE(doubled.ratio.has_value());
  CHECK(*doubled.ratio == q(2));
}

TEST_CASE("ratio check: enclosure path when the ratio leaves the field") {
  // J = [0, (sqrt5 - 1)/2): the measure lives outside Q(sqrt2), and a small
  // lower parabolic moves its endpoint into yet another extension, so the
  // verdict comes from radical-sum comparison and the ratio from enclosures.
  const RealAlgebraic golden = RealAlgebraic::quadratic_root(q(1), q(1), q(-1), +1);
  REQUIRE(golden > ra(0));
  REQUIRE(golden < ra(1));
  const Mat2 g(q(1), q(0), q(1, 2000), q(1));
  const auto res = check_distortion(g, ra(0), ra(1), iv(ra(0), golden), rat(1, 48));
  CHECK(res.pass);
  CHECK_FALSE(res.ratio.has_value());
  CHECK(res.ratio_lo > rat(47, 48));
  CHECK(res.ratio_hi < rat(49, 48));
  CHECK(Rational(res.ratio_hi - res.ratio_lo) <= rat(1, 1000000));
}

TEST_CASE("ratio check: certified ball stays strictly inside the window") {
  const DistortionCert cert = distortion_delta(rat(0), rat(1), rat(1, 48));
  Rng rng(20260815);
  for (int trial = 0; trial < 60; ++trial) {
    const Mat2 g = random_small(rng, 2000);  // dist <= 9/2000 < 1/195
    CHECK(dist_to_identity(g) < QSqrt2(cert.delta));
    for (int reps = 0; reps < 5; ++reps) {
      const IntervalSet j = random_subset(rng);
      const auto res = check_distortion(g, ra(0), ra(1), j, cert.epsilon);
      CHECK(res.pass);
      if (res.ratio) {
        // Mean value: the exact ratio obeys the certified derivative range.
        CHECK(*res.ratio >= QSqrt2(cert.deriv_lo));
        CHECK(*res.ratio <= QSqrt2(cert.deriv_hi));
      }
    }
  }
}

TEST_CASE("ratio check: malformed inputs are rejected") {
  const IntervalSet j = iv(ra(0), ra(1));
  CHECK_THROWS_AS(check_distortion(Mat2::identity(), ra(0), ra(1), IntervalSet(), rat(1, 48)),
                  ConfigError);
  CHECK_THROWS_AS(check_distortion(Mat2::identity(), ra(0), ra(1), iv(ra(0), ra(3, 2)), rat(1, 48)),
                  ConfigError);
  // Pole at 1/2 sits inside the base interval.
  CHECK_THROWS_AS(check_distortion(Mat2(q(1), q(-1), q(2), q(-1)), ra(0), ra(1), j, rat(1, 48)),
                  ConfigError);
  CHECK_THROWS_AS(check_distortion(Mat2::identity(), ra(0), ra(1), j, rat(3, 2)), ConfigError);
}

TEST_CASE("pigeonhole: six identity maps cover everything sevenfold") {
  const std::vector<Mat2> gs(6, Mat2::identity());
  const PigeonholeWitness w = pigeonhole_witness(rat(0), rat(1), iv(ra(0), ra(1)), gs);
  CHECK(w.cell_union == iv(ra(0), ra(1)));
  CHECK(w.coverage == std::vector<int>{0, 1, 2, 3, 4, 5, 6});
  CHECK(w.indices == std::array<int, 4>{0, 1, 2, 3});
  REQUIRE(w.total.as_qsqrt2().has_value());
  CHECK(*w.total.as_qsqrt2() == q(7));
  REQUIRE(w.gate.as_qsqrt2().has_value());
  CHECK(*w.gate.as_qsqrt2() == q(3));
}

TEST_CASE("pigeonhole: small translations produce the staircase sweep") {
  std::vector<Mat2> gs;
  for (long i = 1; i <= 6; ++i) gs.push_back(translation(q(i, 1000)));
  const IntervalSet j = iv(ra(0), ra(1));
  const PigeonholeWitness w = pigeonhole_witness(rat(0), rat(1), j, gs);

  // L_i = [0, 1 - i/1000); the sevenfold-covered prefix wins on measure.
  CHECK(w.cell_union == iv(ra(0), ra(497, 500)));
  CHECK(w.coverage == std::vector<int>{0, 1, 2, 3, 4, 5, 6});
  CHECK(w.indices == std::array<int, 4>{0, 1, 2, 3});
  REQUIRE(w.total.as_qsqrt2().has_value());
  CHECK(*w.total.as_qsqrt2() == q(6979, 1000));

  // Independent recheck of one slab: J*g_3^-1 ∩ I = [0, 997/1000).
  CHECK(set_intersect(pushforward(j, invert(gs[2])), iv(ra(0), ra(1))) == iv(ra(0), ra(997, 1000)));
}

TEST_CASE("pigeonhole: half-measure target at the boundary is accepted") {
  std::vector<Mat2> gs;
  for (long i = 1; i <= 6; ++i) gs.push_back(translation(q(i, 2000)));
  const PigeonholeWitness w = pigeonhole_witness(rat(0), rat(1), iv(ra(0), ra(1, 2)), gs);
  CHECK(w.cell_union == iv(ra(0), ra(497, 1000)));
  CHECK(w.coverage == std::vector<int>{0, 1, 2, 3, 4, 5, 6});
  REQUIRE(w.total.as_qsqrt2().has_value());
  CHECK(*w.total.as_qsqrt2() == q(6979, 2000));
}

TEST_CASE("pigeonhole: every violated precondition is named") {
  const IntervalSet j = iv(ra(0), ra(1));

  std::vector<Mat2> big;
  for (long i = 1; i <= 6; ++i) big.push_back(translation(q(i, 100)));
  try {
    pigeonhole_witness(rat(0), rat(1), j, big);
    CHECK(false);
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    // 1/100 < 1/96 clears I'; 2/100 onward escape it.
    CHECK(msg.find("g_1^-1") == std::string::npos);
    CHECK(msg.find("I*g_2^-1 escapes I'") != std::string::npos);
    CHECK(msg.find("I*g_6^-1 escapes I'") != std::string::npos);
  }

  // Three different violations at once, all reported.
  const Mat2 invol(q(1), q(-1), q(2), q(-1));  // own inverse; pole at 1/2
  const Mat2 gamma(QSqrt2::sqrt2(), q(0), q(0), QSqrt2(Rational(0), Rational(1, 2)));
  std::vector<Mat2> mixed{invol, gamma, translation(q(1, 1000)), translation(q(1, 1000)),
                          translation(q(1, 1000)), translation(q(1, 1000))};
  try {
    pigeonhole_witness(rat(0), rat(1), iv(ra(0), ra(1, 4)), mixed);
    CHECK(false);
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("mu(J) < mu(I)/2") != std::string::npos);
    CHECK(msg.find("pole of g_1^-1 meets I") != std::string::npos);
    CHECK(msg.find("derivative range of g_2^-1") != std::string::npos);
  }

  CHECK_THROWS_AS(pigeonhole_witness(rat(0), rat(1), j, std::vector<Mat2>(5, Mat2::identity())),
                  ConfigError);
  CHECK_THROWS_AS(pigeonhole_witness(rat(1), rat(0), j, std::vector<Mat2>(6, Mat2::identity())),
                  ConfigError);
  // J escaping I is a named violation too.
  CHECK_THROWS_AS(
      pigeonhole_witness(rat(0), rat(1), iv(ra(0), ra(3, 2)), std::vector<Mat2>(6, Mat2::identity())),
      ConfigError);
}

TEST_CASE("pigeonhole: random in-ball instances with independent rechecks") {
  Rng rng(977);
  const IntervalSet iset_i = iv(ra(0), ra(1));
  const RadicalSum mu_i = measure(iset_i);
  for (int trial = 0; trial < 20; ++trial) {
    // Guarantee mu(J) >= 1/2 by anchoring [0, 1/2), then sprinkle extras.
    std::vector<Interval> parts{{ra(0), ra(1, 2)}};
    const long extras = rng.index(3);
    for (long k = 0; k < extras; ++k) {
      const long a = 32 + rng.index(32);
      const long b = a + 1 + rng.index(64 - a);
      parts.push_back({ra(a, 64), ra(b, 64)});
    }
    const IntervalSet j = IntervalSet::from_pieces(parts);

    std::vector<Mat2> gs;
    for (int i = 0; i < 6; ++i) gs.push_back(random_small(rng, 4000));

    const PigeonholeWitness w = pigeonhole_witness(rat(0), rat(1), j, gs);

    CHECK(measure(w.cell_union).sign() > 0);
    for (size_t k = 0; k + 1 < w.indices.size(); ++k) CHECK(w.indices[k] < w.indices[k + 1]);
    CHECK(w.indices.front() >= 0);
    CHECK(w.indices.back() <= 6);

    // Recompute the integral and the gate from scratch.
    RadicalSum total;
    for (int i = 0; i <= 6; ++i) {
      const IntervalSet li =
          i == 0 ? j : set_intersect(pushforward(j, invert(gs[static_cast<size_t>(i - 1)])), iset_i);
      total += measure(li);
    }
    CHECK(total == w.total);
    CHECK(w.gate == mu_i.scaled(q(3)));
    CHECK(total > w.gate);

    // Containment recheck, independent of the library's internal guard.
    for (const int idx : w.indices) {
      const Mat2 m = idx == 0 ? Mat2::identity() : gs[static_cast<size_t>(idx - 1)];
      CHECK(set_contains(j, pushforward(w.cell_union, m)));
    }
  }
}
