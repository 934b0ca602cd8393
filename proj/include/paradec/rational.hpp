/**
 * @file rational.hpp
 * @brief Exact rationals: GMP's mpq_class plus parsing/printing helpers.
 *
 * Rational is mpq_class. GMP keeps values canonical (gcd(num, den) = 1,
 * den > 0) as long as arithmetic goes through mpq routines, which is all we
 * ever do. The helpers here add the strict external text form used across
 * every serialization format in this project:
 *
 *      "p/q"  with q > 0 and gcd(|p|, q) = 1, e.g. "-3/4", "0/1"
 *
 * Bare integers ("7", "-2") are accepted on input as p/1. Unreduced or
 * badly formed literals are rejected rather than silently canonicalized so
 * that files round-trip byte-for-byte.
 */
#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "paradec/errors.hpp"

namespace paradec {

using Rational = mpq_class;
using Integer = mpz_class;

/// -1, 0, +1.
inline int rat_sign(const Rational& q) { return sgn(q); }

inline Rational rat_abs(const Rational& q) { return abs(q); }

/// 2^k for any integer k (negative k gives 1/2^|k|).
inline Rational rat_pow2(long k) {
  Rational r;
  if (k >= 0) {
    mpq_mul_2exp(r.get_mpq_t(), Rational(1).get_mpq_t(), static_cast<unsigned long>(k));
  } else {
    mpq_div_2exp(r.get_mpq_t(), Rational(1).get_mpq_t(), static_cast<unsigned long>(-k));
  }
  return r;
}

/// Largest integer <= q.
inline Integer rat_floor(const Rational& q) {
  Integer z;
  mpz_fdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return z;
}

/// Strict canonical form "p/q"; the only emitter used for serialization.
inline std::string rat_to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Digit-string validator: optional leading '-', no leading zeros, nonempty.
inline bool rat_detail_is_integer_literal(const std::string& s, bool allow_sign) {
  std::size_t i = 0;
  if (allow_sign && i < s.size() && s[i] == '-') ++i;
  if (i >= s.size()) return false;
  if (s[i] == '0' && s.size() > i + 1) return false;  // no leading zeros
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  if (s == "-0") return false;
  return true;
}

/// Parse "p/q" (reduced, q > 0) or a bare integer "p". Throws ConfigError.
inline Rational rat_parse(const std::string& text) {
  const auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!rat_detail_is_integer_literal(num, true) || !rat_detail_is_integer_literal(den, false))
    throw ConfigError("bad rational literal: '" + text + "'");
  Integer n(num), d(den);
  if (sgn(d) <= 0) throw ConfigError("rational denominator must be positive: '" + text + "'");
  Integer g;
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  if (g != 1) throw ConfigError("rational literal not reduced: '" + text + "'");
  return Rational(n, d);
}

/// Exact square root when q is a perfect square of a rational, else nullopt.
inline std::optional<Rational> rat_sqrt_exact(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (mpz_perfect_square_p(q.get_num_mpz_t()) == 0) return std::nullopt;
  if (mpz_perfect_square_p(q.get_den_mpz_t()) == 0) return std::nullopt;
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  return Rational(n, d);
}

/// floor(sqrt(q)) over nonnegative rationals is not rational in general;
/// these give rational bounds lo <= sqrt(q) <= hi with hi - lo <= 2^-k.
inline std::pair<Rational, Rational> rat_sqrt_bounds(const Rational& q, unsigned long k) {
  if (sgn(q) < 0) throw MathError("rat_sqrt_bounds: negative radicand");
  // sqrt(p/d) = sqrt(p*d)/d; scale by 4^k so the integer sqrt carries k bits.
  Integer pd = q.get_num() * q.get_den();
  Integer scaled = pd << (2 * k);
  Integer root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  Integer den = q.get_den() << k;
  Rational lo(root, den), hi(root + 1, den);
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

}  // namespace paradec
