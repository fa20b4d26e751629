#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cluster/arith.hpp"
#include "cluster/quiver/mutation_class.hpp"
#include "cluster/quiver/quiver.hpp"

namespace cluster {

enum class Flavor { A, X };

inline const char* flavor_name(Flavor f) { return f == Flavor::A ? "A" : "X"; }

/// A-seed: one variable per node, frozen nodes carrying coefficients.
struct ASeed {
  Quiver quiver;
  std::vector<RationalFunction> vars;

  friend bool operator==(const ASeed& a, const ASeed& b) { return a.quiver == b.quiver && a.vars == b.vars; }
};

/// X-seed: one variable per mutable node, in increasing node order.
struct XSeed {
  Quiver quiver;
  std::vector<RationalFunction> vars;

  friend bool operator==(const XSeed& a, const XSeed& b) { return a.quiver == b.quiver && a.vars == b.vars; }
};

/// Position of a mutable node among the X coordinates.
inline std::size_t x_slot(const Quiver& q, std::size_t node) {
  if (node >= q.size() || q.is_frozen(node)) throw IllegalMutation("node " + std::to_string(node + 1) + " carries no X coordinate");
  std::size_t s = 0;
  for (std::size_t i = 0; i < node; ++i)
    if (!q.is_frozen(i)) ++s;
  return s;
}

/// a1..an, one per node.
inline VariableNames a_names(const Quiver& q) { return indexed_names("a", q.size()); }

/// x_i for each mutable node i (1-based node labels).
inline VariableNames x_names(const Quiver& q) {
  VariableNames v;
  for (std::size_t i : q.mutable_nodes()) v.push_back("x" + std::to_string(i + 1));
  return v;
}

inline ASeed initial_a_seed(const Quiver& q) {
  ASeed s{q, {}};
  for (std::size_t i = 0; i < q.size(); ++i) s.vars.push_back(RationalFunction::variable(q.size(), i));
  return s;
}

inline XSeed initial_x_seed(const Quiver& q) {
  const std::size_t m = q.mutable_nodes().size();
  XSeed s{q, {}};
  for (std::size_t i = 0; i < m; ++i) s.vars.push_back(RationalFunction::variable(m, i));
  return s;
}

namespace detail {

/// Laurent fast path for the exchange: numerator products over a monomial,
/// then one exact polynomial division by the numerator of a_k. Absent when
/// some input is not Laurent or the division leaves a remainder.
inline std::optional<RationalFunction> laurent_exchange(const ASeed& s, std::size_t k) {
  const std::size_t nv = s.vars.front().nvars();
  auto unit_monomial = [](const RationalFunction& f) {
    return f.denominator().is_monomial() && f.denominator().leading_coef() == 1;
  };
  if (!unit_monomial(s.vars[k])) return std::nullopt;
  Polynomial in(nv, 1), out(nv, 1);
  Monomial in_den, out_den;
  for (std::size_t j = 0; j < s.quiver.size(); ++j) {
    const int64_t e = s.quiver(k, j);
    if (e == 0) continue;
    const RationalFunction& v = s.vars[j];
    if (!unit_monomial(v)) return std::nullopt;
    const auto p = static_cast<unsigned>(e < 0 ? -e : e);
    Monomial d;
    for (unsigned t = 0; t < p; ++t) d = d * v.denominator().leading().monomial;
    (e < 0 ? in : out) = (e < 0 ? in : out) * v.numerator().pow(p);
    (e < 0 ? in_den : out_den) = (e < 0 ? in_den : out_den) * d;
  }
  const Monomial l = Monomial::max(in_den, out_den);
  const Polynomial sum = in.scaled(l / in_den, 1) + out.scaled(l / out_den, 1);
  // a_k = m P / d with m a monomial: divide by P, move m below the line.
  const Polynomial& nk = s.vars[k].numerator();
  const Monomial m = nk.monomial_content();
  auto q = divide_exact(sum, nk.divided_exact(m));
  if (!q) return std::nullopt;
  Polynomial num = q->scaled(s.vars[k].denominator().leading().monomial, 1);
  const Monomial den = l * m;
  const Monomial common = Monomial::min(num.monomial_content(), den);
  return RationalFunction::from_reduced(num.divided_exact(common), Polynomial(nv, den / common, 1));
}

}  // namespace detail

/// Exchange at k: a_k' = (prod_{eps_kj < 0} a_j^{-eps_kj} + prod_{eps_kj > 0} a_j^{eps_kj}) / a_k.
inline ASeed mutate_a(const ASeed& s, std::size_t k) {
  s.quiver.check_mutable(k);
  ASeed r{s.quiver.mutate(k), s.vars};
  if (auto fast = detail::laurent_exchange(s, k)) {
    r.vars[k] = std::move(*fast);
    return r;
  }
  const std::size_t nv = s.vars.front().nvars();
  RationalFunction in(nv, 1);
  RationalFunction out(nv, 1);
  for (std::size_t j = 0; j < s.quiver.size(); ++j) {
    const int64_t e = s.quiver(k, j);
    if (e < 0) in *= s.vars[j].pow(-e);
    if (e > 0) out *= s.vars[j].pow(e);
  }
  r.vars[k] = (in + out) / s.vars[k];
  return r;
}

/// x_k' = 1/x_k; x_j' = x_j (1 + x_k^{-sgn eps_jk})^{-eps_jk} when eps_jk != 0.
inline XSeed mutate_x(const XSeed& s, std::size_t k) {
  s.quiver.check_mutable(k);
  const std::size_t nv = s.vars.front().nvars();
  const RationalFunction& xk = s.vars[x_slot(s.quiver, k)];
  const RationalFunction one(nv, 1);
  const RationalFunction up = one + xk;
  const RationalFunction down = one + xk.inverse();
  XSeed r{s.quiver.mutate(k), s.vars};
  std::size_t slot = 0;
  for (std::size_t j : s.quiver.mutable_nodes()) {
    const int64_t e = s.quiver(j, k);
    if (j == k) {
      r.vars[slot] = xk.inverse();
    } else if (e > 0) {
      r.vars[slot] = s.vars[slot] * down.pow(-e);
    } else if (e < 0) {
      r.vars[slot] = s.vars[slot] * up.pow(-e);
    }
    ++slot;
  }
  return r;
}

inline ASeed apply_path(ASeed s, const MutationPath& path) {
  for (std::size_t k : path) s = mutate_a(s, k);
  return s;
}

inline XSeed apply_path(XSeed s, const MutationPath& path) {
  for (std::size_t k : path) s = mutate_x(s, k);
  return s;
}

/// rho*(x_j) = prod_i a_i^{eps_ji} over all nodes i, read in the seed's own
/// variables and quiver.
inline XSeed rho(const ASeed& s) {
  const std::size_t nv = s.vars.front().nvars();
  XSeed r{s.quiver, {}};
  for (std::size_t j : s.quiver.mutable_nodes()) {
    RationalFunction v(nv, 1);
    for (std::size_t i = 0; i < s.quiver.size(); ++i) {
      const int64_t e = s.quiver(j, i);
      if (e != 0) v *= s.vars[i].pow(e);
    }
    r.vars.push_back(std::move(v));
  }
  return r;
}

/// Pulls an X-flavor function on the initial seed of q back to the A side.
inline RationalFunction rho_pullback(const Quiver& q, const RationalFunction& g) {
  return substitute(g, rho(initial_a_seed(q)).vars);
}

/// True iff every variable is a Laurent polynomial in the initial cluster.
inline bool laurent_check(const ASeed& s) {
  for (const auto& v : s.vars)
    if (!v.is_laurent()) return false;
  return true;
}

/// Laurent with positive integer coefficients, for every variable.
inline bool positive_laurent_check(const ASeed& s) {
  for (const auto& v : s.vars)
    if (!v.is_positive_laurent()) return false;
  return true;
}

namespace detail {

/// Upper bound on the term count of the exchange numerator before division.
inline double exchange_size_bound(const ASeed& s, std::size_t k) {
  double in = 1, out = 1;
  for (std::size_t j = 0; j < s.quiver.size(); ++j) {
    const int64_t e = s.quiver(k, j);
    if (e == 0) continue;
    (e < 0 ? in : out) *= std::pow(static_cast<double>(s.vars[j].numerator().size()), static_cast<double>(e < 0 ? -e : e));
  }
  return in + out;
}

}  // namespace detail

struct LaurentWalkReport {
  std::size_t steps = 0;
  std::size_t rejected = 0;
  std::size_t largest_numerator = 0;
  bool all_positive_laurent = true;
  MutationPath path;
};

/// Random mutation walk that checks every new cluster variable for positive
/// Laurentness. A proposed step whose new numerator exceeds term_budget terms
/// (or whose pre-division bound exceeds 16 times that) is rejected and another
/// node drawn; undoing the previous step always fits the budget, so the walk
/// never stalls.
inline LaurentWalkReport laurent_walk(const ASeed& start, std::size_t steps, uint64_t seed,
                                      std::size_t term_budget = 4000) {
  LaurentWalkReport report;
  const std::vector<std::size_t> nodes = start.quiver.mutable_nodes();
  if (nodes.empty()) return report;
  std::mt19937_64 rng(seed);
  ASeed s = start;
  std::size_t previous = start.quiver.size();
  while (report.steps < steps) {
    std::vector<std::size_t> order = nodes;
    std::shuffle(order.begin(), order.end(), rng);
    if (previous < start.quiver.size()) {
      // Undoing the last mutation is the fallback, tried last.
      order.erase(std::find(order.begin(), order.end(), previous));
      order.push_back(previous);
    }
    bool moved = false;
    for (std::size_t k : order) {
      if (k != previous && detail::exchange_size_bound(s, k) > 16.0 * static_cast<double>(term_budget)) {
        ++report.rejected;
        continue;
      }
      ASeed next = mutate_a(s, k);
      const std::size_t size = next.vars[k].numerator().size();
      if (size > term_budget && k != previous) {
        ++report.rejected;
        continue;
      }
      if (!next.vars[k].is_positive_laurent()) report.all_positive_laurent = false;
      report.largest_numerator = std::max(report.largest_numerator, size);
      s = std::move(next);
      report.path.push_back(k);
      previous = k;
      moved = true;
      break;
    }
    if (!moved) throw BoundExceeded("laurent walk could not move within the term budget");
    ++report.steps;
  }
  return report;
}

}  // namespace cluster
