/**
 * @file poly.cpp
 * @brief Classical polynomial algorithms over exact rationals.
 */
#include "paradec/poly.hpp"

#include <algorithm>

#include "paradec/errors.hpp"

namespace paradec {

void Poly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rational Poly::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return Poly(std::move(d));
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
  return Poly(std::move(r));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly Poly::operator-() const {
  std::vector<Rational> r = c_;
  for (auto& ci : r) ci = -ci;
  return Poly(std::move(r));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(r));
}

Poly Poly::scaled(const Rational& k) const {
  std::vector<Rational> r = c_;
  for (auto& ci : r) ci *= k;
  return Poly(std::move(r));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw MathError("Poly::divmod: division by zero polynomial");
  std::vector<Rational> rem = num.c_;
  const int dn = den.degree();
  if (num.degree() < dn) return {Poly(), num};
  std::vector<Rational> quo(num.degree() - dn + 1, Rational(0));
  for (int k = num.degree() - dn; k >= 0; --k) {
    const Rational q = rem[k + dn] / den.lead();
    quo[k] = q;
    if (sgn(q) == 0) continue;
    for (int i = 0; i <= dn; ++i) rem[k + i] -= q * den.c_[i];
  }
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly Poly::gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  return x.scaled(Rational(1) / x.lead());  // monic
}

Poly Poly::squarefree() const {
  if (degree() <= 1) return *this;
  const Poly g = gcd(*this, derivative());
  if (g.degree() <= 0) return *this;
  return divmod(*this, g).first;
}

Poly Poly::primitive_integer() const {
  if (is_zero()) return *this;
  Integer l(1);
  for (const auto& ci : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), ci.get_den_mpz_t());
  std::vector<Rational> scaled_coeffs = c_;
  for (auto& ci : scaled_coeffs) {
    ci *= Rational(l);
    ci.canonicalize();
  }
  Integer g(0);
  for (const auto& ci : scaled_coeffs) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ci.get_num_mpz_t());
  if (sgn(scaled_coeffs.back()) < 0) g = -g;
  for (auto& ci : scaled_coeffs) ci /= Rational(g);
  return Poly(std::move(scaled_coeffs));
}

Rational Poly::cauchy_bound() const {
  if (degree() < 1) return Rational(1);
  Rational m(0);
  for (int i = 0; i < degree(); ++i) m = std::max(m, Rational(abs(c_[i] / lead())));
  return m + 1;
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    if (!out.empty()) out += " + ";
    out += rat_to_string(c_[i]) + (i == 0 ? "" : "*t^" + std::to_string(i));
  }
  return out;
}

SturmSeq::SturmSeq(const Poly& squarefree) {
  if (squarefree.is_zero()) throw MathError("SturmSeq: zero polynomial");
  seq_.push_back(squarefree);
  if (squarefree.degree() >= 1) {
    seq_.push_back(squarefree.derivative());
    while (seq_.back().degree() >= 1) {
      Poly rem = Poly::divmod(seq_[seq_.size() - 2], seq_.back()).second;
      if (rem.is_zero()) {
        // Input was not square-free after all; our callers guarantee it.
        throw MathError("SturmSeq: repeated roots (input not square-free)");
      }
      seq_.push_back(-rem);
    }
  }
  bound_ = squarefree.cauchy_bound();
}

int SturmSeq::variations(const Rational& x) const {
  int v = 0, prev = 0;
  for (const auto& p : seq_) {
    const int s = p.sign_at(x);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

int SturmSeq::count(const Rational& lo, const Rational& hi) const {
  if (lo >= hi) return 0;
  if (seq_.front().sign_at(lo) == 0 || seq_.front().sign_at(hi) == 0)
    throw MathError("SturmSeq::count: endpoint is a root");
  return variations(lo) - variations(hi);
}

int SturmSeq::count_all() const { return count(-bound_, bound_); }

}  // namespace paradec
