#pragma once

#include <cstdlib>
#include <optional>
#include <utility>

#include "cluster/arith/gcd.hpp"
#include "cluster/arith/polynomial.hpp"

namespace cluster {

/// Reduced fraction of integer polynomials: gcd(num, den) = 1 and the
/// denominator's leading coefficient is positive, so equal values have equal
/// representations.
class RationalFunction {
 public:
  RationalFunction() : num_(0), den_(0, 1) {}
  explicit RationalFunction(std::size_t nvars) : num_(nvars), den_(nvars, 1) {}
  RationalFunction(std::size_t nvars, const mpz_class& c) : num_(nvars, c), den_(nvars, 1) {}
  explicit RationalFunction(Polynomial p) : num_(std::move(p)), den_(num_.nvars(), 1) {}

  RationalFunction(Polynomial num, Polynomial den) {
    if (num.nvars() != den.nvars()) throw RingMismatch("numerator and denominator from different rings");
    if (den.is_zero()) throw ZeroDivision("zero denominator");
    Polynomial g = gcd(num, den);
    if (!g.is_one()) {
      num = detail::exact(num, g);
      den = detail::exact(den, g);
    }
    if (den.leading_coef() < 0) {
      num = -num;
      den = -den;
    }
    num_ = std::move(num);
    den_ = std::move(den);
  }

  static RationalFunction variable(std::size_t nvars, std::size_t index) {
    return RationalFunction(Polynomial::variable(nvars, index));
  }

  /// Laurent monomial prod x_i^{e_i}; exponents may be negative.
  static RationalFunction laurent_monomial(std::size_t nvars, const ExponentVector& e, const mpz_class& c = 1) {
    Monomial up;
    Monomial down;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 0) up.set(i, e[i]);
      if (e[i] < 0) down.set(i, -e[i]);
    }
    RationalFunction r(nvars);
    r.num_ = Polynomial(nvars, up, c);
    r.den_ = Polynomial(nvars, down, 1);
    return r;
  }

  std::size_t nvars() const { return num_.nvars(); }
  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_one(); }

  RationalFunction operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RationalFunction operator+(const RationalFunction& f, const RationalFunction& g) { return add(f, g, false); }
  friend RationalFunction operator-(const RationalFunction& f, const RationalFunction& g) { return add(f, g, true); }

  friend RationalFunction operator*(const RationalFunction& f, const RationalFunction& g) {
    check_ring(f, g);
    if (f.is_zero() || g.is_zero()) return RationalFunction(f.nvars());
    Polynomial g1 = gcd(f.num_, g.den_);
    Polynomial g2 = gcd(g.num_, f.den_);
    Polynomial n1 = g1.is_one() ? f.num_ : detail::exact(f.num_, g1);
    Polynomial d2 = g1.is_one() ? g.den_ : detail::exact(g.den_, g1);
    Polynomial n2 = g2.is_one() ? g.num_ : detail::exact(g.num_, g2);
    Polynomial d1 = g2.is_one() ? f.den_ : detail::exact(f.den_, g2);
    return from_reduced(n1 * n2, d1 * d2);
  }

  friend RationalFunction operator/(const RationalFunction& f, const RationalFunction& g) { return f * g.inverse(); }

  RationalFunction inverse() const {
    if (is_zero()) throw ZeroDivision("inverse of zero");
    return from_reduced(den_, num_);
  }

  /// Integer power; negative exponents invert.
  RationalFunction pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    RationalFunction r;
    r.num_ = num_.pow(static_cast<unsigned>(k));
    r.den_ = den_.pow(static_cast<unsigned>(k));
    return r;
  }

  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

  friend bool operator==(const RationalFunction& f, const RationalFunction& g) {
    return f.num_ == g.num_ && f.den_ == g.den_;
  }

  /// Cross-multiplication equality, independent of normalization.
  friend bool equal_by_cross_product(const RationalFunction& f, const RationalFunction& g) {
    check_ring(f, g);
    return f.num_ * g.den_ == g.num_ * f.den_;
  }

  /// True iff the reduced denominator is a single term.
  bool is_laurent() const { return den_.is_monomial(); }

  /// True iff Laurent with integer coefficients that are all positive.
  bool is_positive_laurent() const {
    if (!is_laurent() || den_.leading_coef() != 1 || num_.is_zero()) return false;
    for (const auto& t : num_.terms()) {
      if (t.coef <= 0) return false;
    }
    return true;
  }

  /// Exponents d with f = N / x^d where N is a polynomial divisible by no
  /// variable; entries are negative when a variable divides the numerator.
  ExponentVector denominator_vector() const {
    if (!is_laurent()) throw NotLaurent("no denominator vector: denominator is not a monomial");
    Monomial nm = num_.monomial_content();
    Monomial dm = den_.leading().monomial;
    ExponentVector d(nvars());
    for (std::size_t i = 0; i < nvars(); ++i) d[i] = dm[i] - nm[i];
    return d;
  }

  /// Constructs without a gcd; the caller guarantees coprimality.
  static RationalFunction from_reduced(Polynomial num, Polynomial den) {
    if (den.is_zero()) throw ZeroDivision("zero denominator");
    if (den.leading_coef() < 0) {
      num = -num;
      den = -den;
    }
    RationalFunction r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
  }

 private:
  static void check_ring(const RationalFunction& f, const RationalFunction& g) {
    if (f.nvars() != g.nvars()) throw RingMismatch("rational functions from different rings");
  }

  static RationalFunction add(const RationalFunction& f, const RationalFunction& g, bool subtract) {
    check_ring(f, g);
    if (g.is_zero()) return f;
    if (f.is_zero()) return subtract ? -g : g;
    if (f.den_ == g.den_) {
      Polynomial n = subtract ? f.num_ - g.num_ : f.num_ + g.num_;
      return RationalFunction(std::move(n), f.den_);
    }
    Polynomial d = gcd(f.den_, g.den_);
    Polynomial fd = detail::exact(f.den_, d);
    Polynomial gd = detail::exact(g.den_, d);
    Polynomial n = subtract ? f.num_ * gd - g.num_ * fd : f.num_ * gd + g.num_ * fd;
    if (n.is_zero()) return RationalFunction(f.nvars());
    // gcd(n, fd*gd*d) = gcd(n, d) for reduced inputs.
    Polynomial d2 = gcd(n, d);
    if (!d2.is_one()) {
      n = detail::exact(n, d2);
      d = detail::exact(d, d2);
    }
    return from_reduced(std::move(n), fd * gd * d);
  }

  Polynomial num_;
  Polynomial den_;
};

}  // namespace cluster
