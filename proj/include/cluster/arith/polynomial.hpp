#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "cluster/arith/monomial.hpp"
#include "cluster/error.hpp"

namespace cluster {

struct Term {
  Monomial monomial;
  mpz_class coef;
};

/// Sparse multivariate polynomial with integer coefficients over a ring of
/// `nvars` variables. Terms are kept in strictly decreasing graded
/// lexicographic order with no zero coefficients; the zero polynomial has no
/// terms.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(check_nvars(nvars)) {}
  Polynomial(std::size_t nvars, const mpz_class& c) : nvars_(check_nvars(nvars)) {
    if (c != 0) terms_.push_back({Monomial{}, c});
  }
  Polynomial(std::size_t nvars, Monomial m, const mpz_class& c) : nvars_(check_nvars(nvars)) {
    if (c != 0) terms_.push_back({m, c});
  }

  static Polynomial variable(std::size_t nvars, std::size_t index, int32_t power = 1) {
    if (index >= nvars) throw RingMismatch("variable index out of range");
    return Polynomial(nvars, Monomial::variable(index, power), 1);
  }

  /// Builds a polynomial from arbitrary terms, combining duplicates.
  static Polynomial from_terms(std::size_t nvars, std::vector<Term> terms) {
    Polynomial p(nvars);
    p.terms_ = std::move(terms);
    p.canonicalize();
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_one() const { return terms_.size() == 1 && terms_[0].monomial.is_one() && terms_[0].coef == 1; }

  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading() const { return terms_.front(); }
  const mpz_class& leading_coef() const { return terms_.front().coef; }
  mpz_class constant_value() const { return terms_.empty() ? mpz_class(0) : terms_.front().coef; }

  int32_t degree_in(std::size_t var) const {
    int32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.monomial[var]);
    return d;
  }

  int64_t total_degree() const { return terms_.empty() ? 0 : terms_.front().monomial.degree(); }

  bool uses_variable(std::size_t var) const {
    return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.monomial[var] != 0; });
  }

  /// Exponent-wise minimum over all terms (the largest monomial factor).
  Monomial monomial_content() const {
    if (terms_.empty()) return {};
    Monomial m = terms_.front().monomial;
    for (const auto& t : terms_) m = Monomial::min(m, t.monomial);
    return m;
  }

  /// Gcd of the integer coefficients, always non-negative.
  mpz_class integer_content() const {
    mpz_class g = 0;
    for (const auto& t : terms_) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_mpz_t());
      if (g == 1) break;
    }
    return g;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check_ring(a, b);
    if (a.is_zero() || b.is_zero()) return Polynomial(a.nvars_);
    if (a.size() == 1) return b.scaled(a.terms_[0].monomial, a.terms_[0].coef);
    if (b.size() == 1) return a.scaled(b.terms_[0].monomial, b.terms_[0].coef);
    const Polynomial& small = a.size() <= b.size() ? a : b;
    const Polynomial& large = a.size() <= b.size() ? b : a;
    // k-way merge of the rows small[i] * large, each already sorted.
    struct Cursor {
      Monomial m;
      std::size_t row;
      std::size_t col;
    };
    auto cmp = [](const Cursor& x, const Cursor& y) { return grlex_less(x.m, y.m); };
    std::priority_queue<Cursor, std::vector<Cursor>, decltype(cmp)> heap(cmp);
    for (std::size_t i = 0; i < small.size(); ++i)
      heap.push({small.terms_[i].monomial * large.terms_[0].monomial, i, 0});
    Polynomial r(a.nvars_);
    mpz_class acc;
    while (!heap.empty()) {
      Cursor top = heap.top();
      Monomial m = top.m;
      acc = 0;
      while (!heap.empty() && heap.top().m == m) {
        Cursor c = heap.top();
        heap.pop();
        mpz_addmul(acc.get_mpz_t(), small.terms_[c.row].coef.get_mpz_t(), large.terms_[c.col].coef.get_mpz_t());
        if (c.col + 1 < large.size())
          heap.push({small.terms_[c.row].monomial * large.terms_[c.col + 1].monomial, c.row, c.col + 1});
      }
      if (acc != 0) r.terms_.push_back({m, acc});
    }
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scaled(const Monomial& m, const mpz_class& c) const {
    Polynomial r(nvars_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.monomial * m, t.coef * c});
    return r;
  }

  Polynomial scaled(const mpz_class& c) const { return scaled(Monomial{}, c); }

  /// Divides every coefficient by `c`; the caller guarantees exactness.
  Polynomial divided_exact(const mpz_class& c) const {
    Polynomial r = *this;
    for (auto& t : r.terms_) mpz_divexact(t.coef.get_mpz_t(), t.coef.get_mpz_t(), c.get_mpz_t());
    return r;
  }

  /// Divides every monomial by `m`; the caller guarantees `m` divides each term.
  Polynomial divided_exact(const Monomial& m) const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.monomial = t.monomial / m;
    return r;
  }

  Polynomial pow(unsigned k) const {
    Polynomial result(nvars_, 1);
    Polynomial base = *this;
    while (k > 0) {
      if (k & 1U) result = result * base;
      k >>= 1U;
      if (k > 0) base = base * base;
    }
    return result;
  }

  /// Exact quotient a / b, or nullopt when b does not divide a.
  /// Heap-based sparse division (Johnson), stops at the first term that
  /// cannot be cancelled.
  friend std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
    check_ring(a, b);
    if (b.is_zero()) throw ZeroDivision("polynomial division by zero");
    Polynomial q(a.nvars_);
    if (a.is_zero()) return q;
    if (b.size() == 1) {
      const Term& bt = b.terms_[0];
      for (const auto& t : a.terms_) {
        if (!bt.monomial.divides(t.monomial) || !mpz_divisible_p(t.coef.get_mpz_t(), bt.coef.get_mpz_t()))
          return std::nullopt;
      }
      q.terms_.reserve(a.size());
      for (const auto& t : a.terms_) {
        mpz_class c;
        mpz_divexact(c.get_mpz_t(), t.coef.get_mpz_t(), bt.coef.get_mpz_t());
        q.terms_.push_back({t.monomial / bt.monomial, std::move(c)});
      }
      return q;
    }
    if (a.total_degree() < b.total_degree()) return std::nullopt;
    const Monomial& lead_m = b.terms_[0].monomial;
    const mpz_class& lead_c = b.terms_[0].coef;
    struct Entry {
      Monomial m;
      std::size_t qi;
      std::size_t bi;
    };
    auto cmp = [](const Entry& x, const Entry& y) { return grlex_less(x.m, y.m); };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
    std::size_t ai = 0;
    mpz_class c;
    while (ai < a.size() || !heap.empty()) {
      Monomial m;
      if (heap.empty() || (ai < a.size() && !grlex_less(a.terms_[ai].monomial, heap.top().m)))
        m = a.terms_[ai].monomial;
      else
        m = heap.top().m;
      c = 0;
      if (ai < a.size() && a.terms_[ai].monomial == m) {
        c = a.terms_[ai].coef;
        ++ai;
      }
      while (!heap.empty() && heap.top().m == m) {
        Entry e = heap.top();
        heap.pop();
        mpz_submul(c.get_mpz_t(), q.terms_[e.qi].coef.get_mpz_t(), b.terms_[e.bi].coef.get_mpz_t());
        if (e.bi + 1 < b.size()) heap.push({q.terms_[e.qi].monomial * b.terms_[e.bi + 1].monomial, e.qi, e.bi + 1});
      }
      if (c == 0) continue;
      if (!lead_m.divides(m) || !mpz_divisible_p(c.get_mpz_t(), lead_c.get_mpz_t())) return std::nullopt;
      mpz_class qc;
      mpz_divexact(qc.get_mpz_t(), c.get_mpz_t(), lead_c.get_mpz_t());
      q.terms_.push_back({m / lead_m, std::move(qc)});
      heap.push({q.terms_.back().monomial * b.terms_[1].monomial, q.size() - 1, 1});
    }
    return q;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].monomial == b.terms_[i].monomial) || a.terms_[i].coef != b.terms_[i].coef) return false;
    return true;
  }

  /// Splits into coefficients of powers of `var`; entry k holds the
  /// coefficient of var^k (with var removed).
  std::vector<Polynomial> coefficients_in(std::size_t var) const {
    std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(degree_in(var)) + 1);
    for (const auto& t : terms_) {
      Monomial m = t.monomial;
      auto k = static_cast<std::size_t>(m[var]);
      m.set(var, 0);
      buckets[k].push_back({m, t.coef});
    }
    std::vector<Polynomial> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) {
      Polynomial p(nvars_);
      // Zeroing one exponent within a bucket keeps the grlex order.
      p.terms_ = std::move(b);
      out.push_back(std::move(p));
    }
    return out;
  }

  /// Inverse of coefficients_in.
  static Polynomial from_coefficients(std::size_t nvars, std::size_t var, const std::vector<Polynomial>& coefs) {
    Polynomial r(nvars);
    for (std::size_t k = 0; k < coefs.size(); ++k) {
      if (coefs[k].is_zero()) continue;
      r += coefs[k].scaled(Monomial::variable(var, static_cast<int32_t>(k)), 1);
    }
    return r;
  }

 private:
  static std::size_t check_nvars(std::size_t n) {
    if (n > kMaxVariables) throw RingMismatch("too many variables for a polynomial ring");
    return n;
  }

  static void check_ring(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_) throw RingMismatch("polynomials from different rings");
  }

  static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
    check_ring(a, b);
    Polynomial r(a.nvars_);
    r.terms_.reserve(a.size() + b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && grlex_less(b.terms_[j].monomial, a.terms_[i].monomial))) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.size() || grlex_less(a.terms_[i].monomial, b.terms_[j].monomial)) {
        r.terms_.push_back({b.terms_[j].monomial, subtract ? mpz_class(-b.terms_[j].coef) : b.terms_[j].coef});
        ++j;
      } else {
        mpz_class c = subtract ? mpz_class(a.terms_[i].coef - b.terms_[j].coef) : mpz_class(a.terms_[i].coef + b.terms_[j].coef);
        if (c != 0) r.terms_.push_back({a.terms_[i].monomial, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  void canonicalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return grlex_less(y.monomial, x.monomial); });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().monomial == t.monomial)
        out.back().coef += t.coef;
      else
        out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.coef == 0; }), out.end());
    terms_ = std::move(out);
  }

  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

}  // namespace cluster
