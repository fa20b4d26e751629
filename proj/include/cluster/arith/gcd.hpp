#pragma once

#include <cstddef>
#include <vector>

#include "cluster/arith/gcd_modp.hpp"
#include "cluster/arith/polynomial.hpp"

namespace cluster {

namespace detail {

/// Univariate view: coefficient k multiplies var^k; the top entry is nonzero.
using UniPoly = std::vector<Polynomial>;

inline void trim(UniPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline Polynomial exact(const Polynomial& a, const Polynomial& b) {
  auto q = divide_exact(a, b);
  if (!q) throw Error("internal: expected exact polynomial division");
  return *std::move(q);
}

/// Sign-normalizes so the leading coefficient is positive.
inline Polynomial positive(Polynomial p) {
  if (!p.is_zero() && p.leading_coef() < 0) return -p;
  return p;
}

}  // namespace detail

Polynomial gcd(const Polynomial& a, const Polynomial& b);

namespace detail {

/// Pseudo-remainder of a by b in the univariate view.
inline UniPoly prem(UniPoly a, const UniPoly& b) {
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) return a;
  int e = static_cast<int>(a.size() - b.size()) + 1;
  const Polynomial& lb = b.back();
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - 1 - db;
    Polynomial la = a.back();
    for (auto& c : a) c = c * lb;
    for (std::size_t j = 0; j <= db; ++j) a[j + shift] -= la * b[j];
    trim(a);
    --e;
  }
  if (e > 0) {
    Polynomial f = lb.pow(static_cast<unsigned>(e));
    for (auto& c : a) c = c * f;
  }
  return a;
}

inline Polynomial content_of(const UniPoly& p) {
  Polynomial g(p.front().nvars());
  for (const auto& c : p) {
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

/// Gcd of two polynomials with trivial integer and monomial content.
inline Polynomial gcd_primitive(const Polynomial& a, const Polynomial& b) {
  const std::size_t n = a.nvars();
  if (a.is_constant() || b.is_constant()) return Polynomial(n, 1);
  if (a == b || a == -b) return positive(a);
  if (a.size() >= b.size()) {
    if (divide_exact(a, b)) return positive(b);
  } else if (divide_exact(b, a)) {
    return positive(a);
  }

  // A variable present in only one argument cannot occur in the gcd.
  for (std::size_t v = 0; v < n; ++v) {
    bool in_a = a.uses_variable(v);
    bool in_b = b.uses_variable(v);
    if (in_a && !in_b) return gcd(content_of(a.coefficients_in(v)), b);
    if (in_b && !in_a) return gcd(a, content_of(b.coefficients_in(v)));
  }
  if (provably_coprime(a, b)) return Polynomial(n, 1);
  if (auto g = modular_gcd(a, b)) return *std::move(g);

  std::size_t var = n;
  int32_t best = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (!a.uses_variable(v)) continue;
    int32_t d = std::max(a.degree_in(v), b.degree_in(v));
    if (var == n || d < best) {
      var = v;
      best = d;
    }
  }

  UniPoly ua = a.coefficients_in(var);
  UniPoly ub = b.coefficients_in(var);
  if (ua.size() < ub.size()) std::swap(ua, ub);
  Polynomial ca = content_of(ua);
  Polynomial cb = content_of(ub);
  Polynomial cont = gcd(ca, cb);
  for (auto& c : ua) c = exact(c, ca);
  for (auto& c : ub) c = exact(c, cb);

  // Subresultant PRS.
  Polynomial g(n, 1);
  Polynomial h(n, 1);
  UniPoly A = std::move(ua);
  UniPoly B = std::move(ub);
  while (true) {
    const int delta = static_cast<int>(A.size()) - static_cast<int>(B.size());
    UniPoly R = prem(A, B);
    if (R.empty()) break;
    if (R.size() == 1) {
      B = UniPoly{Polynomial(n, 1)};
      break;
    }
    A = std::move(B);
    Polynomial divisor = g * h.pow(static_cast<unsigned>(delta));
    for (auto& c : R) c = exact(c, divisor);
    B = std::move(R);
    g = A.back();
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      h = exact(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
    }
  }
  Polynomial cb2 = content_of(B);
  for (auto& c : B) c = exact(c, cb2);
  Polynomial result = Polynomial::from_coefficients(n, var, B) * cont;
  return positive(result);
}

}  // namespace detail

/// Greatest common divisor over Z[x1..xn], normalized to a positive leading
/// coefficient. gcd(0, q) is the normalized q.
inline Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.nvars() != b.nvars()) throw RingMismatch("gcd of polynomials from different rings");
  if (a.is_zero()) return detail::positive(b);
  if (b.is_zero()) return detail::positive(a);
  const std::size_t n = a.nvars();
  Monomial ma = a.monomial_content();
  Monomial mb = b.monomial_content();
  mpz_class ia = a.integer_content();
  mpz_class ib = b.integer_content();
  mpz_class ic;
  mpz_gcd(ic.get_mpz_t(), ia.get_mpz_t(), ib.get_mpz_t());
  Polynomial head(n, Monomial::min(ma, mb), ic);
  if (a.is_monomial() || b.is_monomial()) return head;
  Polynomial pa = a.divided_exact(ma).divided_exact(ia);
  Polynomial pb = b.divided_exact(mb).divided_exact(ib);
  return head * detail::gcd_primitive(pa, pb);
}

}  // namespace cluster
