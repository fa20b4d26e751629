#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "cluster/arith/modp.hpp"
#include "cluster/arith/rational_function.hpp"

namespace cluster {

namespace detail {

/// Cached powers of one polynomial, extended on demand.
class PowerCache {
 public:
  explicit PowerCache(const Polynomial& base) : powers_{Polynomial(base.nvars(), 1), base} {}
  const Polynomial& get(std::size_t k) {
    while (powers_.size() <= k) powers_.push_back(powers_.back() * powers_[1]);
    return powers_[k];
  }

 private:
  std::vector<Polynomial> powers_;
};

/// Sum over terms c*x^e of c * prod_{i >= v} num_i^{e_i} den_i^{D_i - e_i}.
inline Polynomial homogenized_substitute(const Polynomial& p, std::size_t v, std::size_t target_vars,
                                         const std::vector<int32_t>& top, std::vector<PowerCache>& nums,
                                         std::vector<PowerCache>& dens) {
  if (v == top.size()) return Polynomial(target_vars, p.constant_value());
  std::vector<Polynomial> coefs = p.coefficients_in(v);
  Polynomial out(target_vars);
  for (std::size_t k = 0; k < coefs.size(); ++k) {
    if (coefs[k].is_zero()) continue;
    Polynomial inner = homogenized_substitute(coefs[k], v + 1, target_vars, top, nums, dens);
    if (k > 0) inner = inner * nums[v].get(k);
    const std::size_t dk = static_cast<std::size_t>(top[v]) - k;
    if (dk > 0) {
      const Polynomial& d = dens[v].get(dk);
      if (!d.is_one()) inner = inner * d;
    }
    out += inner;
  }
  return out;
}

}  // namespace detail

/// Simultaneously replaces variable i of f by images[i]. All images share one
/// ring, which may differ from f's.
inline RationalFunction substitute(const RationalFunction& f, const std::vector<RationalFunction>& images) {
  const std::size_t n = f.nvars();
  if (images.size() != n) throw RingMismatch("substitution needs one image per variable");
  if (n == 0) throw RingMismatch("substitution into an empty ring");
  const std::size_t m = images.front().nvars();
  for (const auto& img : images)
    if (img.nvars() != m) throw RingMismatch("substitution images from different rings");
  if (f.is_constant()) {
    return RationalFunction(Polynomial(m, f.numerator().constant_value()), Polynomial(m, f.denominator().constant_value()));
  }
  std::vector<int32_t> top(n, 0);
  for (std::size_t i = 0; i < n; ++i) top[i] = std::max(f.numerator().degree_in(i), f.denominator().degree_in(i));
  std::vector<detail::PowerCache> nums;
  std::vector<detail::PowerCache> dens;
  nums.reserve(n);
  dens.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    nums.emplace_back(images[i].numerator());
    dens.emplace_back(images[i].denominator());
  }
  Polynomial num = detail::homogenized_substitute(f.numerator(), 0, m, top, nums, dens);
  Polynomial den = detail::homogenized_substitute(f.denominator(), 0, m, top, nums, dens);
  if (den.is_zero()) throw ZeroDivision("substitution makes the denominator vanish");
  return RationalFunction(std::move(num), std::move(den));
}

/// Exact value of a polynomial at a rational point.
inline mpq_class evaluate_exact(const Polynomial& p, const std::vector<mpq_class>& point) {
  if (point.size() != p.nvars()) throw RingMismatch("point does not match ring size");
  mpq_class sum = 0;
  for (const auto& t : p.terms()) {
    mpq_class v = t.coef;
    for (std::size_t i = 0; i < point.size(); ++i) {
      for (int32_t e = 0; e < t.monomial[i]; ++e) v *= point[i];
    }
    sum += v;
  }
  return sum;
}

inline mpq_class evaluate_exact(const RationalFunction& f, const std::vector<mpq_class>& point) {
  mpq_class d = evaluate_exact(f.denominator(), point);
  if (d == 0) throw ZeroDivision("denominator vanishes at the point");
  mpq_class r = evaluate_exact(f.numerator(), point) / d;
  r.canonicalize();
  return r;
}

inline double evaluate_float(const Polynomial& p, const std::vector<double>& point) {
  if (point.size() != p.nvars()) throw RingMismatch("point does not match ring size");
  double sum = 0;
  for (const auto& t : p.terms()) {
    double v = t.coef.get_d();
    for (std::size_t i = 0; i < point.size(); ++i) {
      for (int32_t e = 0; e < t.monomial[i]; ++e) v *= point[i];
    }
    sum += v;
  }
  return sum;
}

inline double evaluate_float(const RationalFunction& f, const std::vector<double>& point) {
  double d = evaluate_float(f.denominator(), point);
  if (d == 0.0) throw ZeroDivision("denominator vanishes at the point");
  return evaluate_float(f.numerator(), point) / d;
}

inline uint64_t evaluate_mod(const Polynomial& poly, const std::vector<uint64_t>& point, const ModP& f) {
  if (point.size() != poly.nvars()) throw RingMismatch("point does not match ring size");
  uint64_t sum = 0;
  for (const auto& t : poly.terms()) {
    uint64_t v = f.reduce(t.coef);
    for (std::size_t i = 0; i < point.size(); ++i)
      if (t.monomial[i] != 0) v = f.mul(v, f.pow(point[i], static_cast<uint64_t>(t.monomial[i])));
    sum = f.add(sum, v);
  }
  return sum;
}

/// Value mod p, or absence when the denominator vanishes mod p.
inline std::optional<uint64_t> evaluate_mod(const RationalFunction& fn, const std::vector<uint64_t>& point, const ModP& f) {
  uint64_t d = evaluate_mod(fn.denominator(), point, f);
  if (d == 0) return std::nullopt;
  return f.mul(evaluate_mod(fn.numerator(), point, f), f.inv(d));
}

}  // namespace cluster
