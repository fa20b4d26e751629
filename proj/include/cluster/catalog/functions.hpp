#pragma once

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

#include "cluster/arith.hpp"
#include "cluster/ensemble/seed.hpp"
#include "cluster/modular/action.hpp"

namespace cluster {

/// Primitive integer vectors v over the mutable nodes with
/// sum_j v_j eps(j, i) = 0 for every mutable i, as X monomials prod x_j^{v_j}.
inline std::vector<RationalFunction> casimirs(const Quiver& q) {
  const std::vector<std::size_t> mut = q.mutable_nodes();
  const std::size_t m = mut.size();
  // Rows are the equations (one per mutable i), columns the unknowns v_j.
  std::vector<std::vector<mpq_class>> a(m, std::vector<mpq_class>(m));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) a[r][c] = q(mut[c], mut[r]);
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m && row < m; ++c) {
    std::size_t p = row;
    while (p < m && a[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[row]);
    const mpq_class lead = a[row][c];
    for (auto& x : a[row]) x /= lead;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row || a[r][c] == 0) continue;
      const mpq_class f = a[r][c];
      for (std::size_t k = 0; k < m; ++k) a[r][k] -= f * a[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  std::vector<RationalFunction> out;
  std::vector<bool> is_pivot(m, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  for (std::size_t free = 0; free < m; ++free) {
    if (is_pivot[free]) continue;
    std::vector<mpq_class> v(m, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
    mpz_class den = 1;
    for (const auto& x : v) den = lcm(den, mpz_class(x.get_den()));
    std::vector<mpz_class> iv;
    mpz_class g = 0;
    for (const auto& x : v) {
      iv.push_back(mpz_class(x * den));
      g = gcd(g, iv.back());
    }
    ExponentVector e(m);
    bool flip = false;
    for (std::size_t i = 0; i < m; ++i) {
      if (iv[i] != 0) {
        flip = iv[i] < 0;
        break;
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      mpz_class x = iv[i] / g;
      if (flip) x = -x;
      if (!x.fits_sint_p()) throw BoundExceeded("casimir exponent too large");
      e[i] = static_cast<int32_t>(x.get_si());
    }
    out.push_back(RationalFunction::laurent_monomial(m, e));
  }
  return out;
}

namespace detail {

/// Substitutes constants for the listed variables and renames the rest to a
/// smaller ring, keeping their order.
inline RationalFunction specialize(const RationalFunction& f, const std::vector<std::size_t>& fixed, long value) {
  const std::size_t n = f.nvars();
  std::vector<bool> is_fixed(n, false);
  for (std::size_t i : fixed) {
    if (i >= n) throw RingMismatch("variable index out of range");
    is_fixed[i] = true;
  }
  std::size_t kept = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (!is_fixed[i]) ++kept;
  if (kept == 0) kept = 1;
  std::vector<RationalFunction> images;
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i)
    images.push_back(is_fixed[i] ? RationalFunction(kept, value) : RationalFunction::variable(kept, next++));
  return substitute(f, images);
}

}  // namespace detail

/// Sets every A variable outside `keep` to 1. The result lives in the ring of
/// the kept variables, in increasing node order.
inline RationalFunction evaluate_frozen_at_one(const RationalFunction& f, const std::vector<std::size_t>& keep) {
  std::vector<std::size_t> fixed;
  std::set<std::size_t> k(keep.begin(), keep.end());
  for (std::size_t i = 0; i < f.nvars(); ++i)
    if (!k.count(i)) fixed.push_back(i);
  return detail::specialize(f, fixed, 1);
}

/// Sets the listed X variables to 0; the result lives in the ring of the rest.
inline RationalFunction evaluate_x_at_zero(const RationalFunction& g, const std::vector<std::size_t>& removed) {
  return detail::specialize(g, removed, 0);
}

/// Identifies the variables of each block with the block's first member. The
/// result has one variable per block, in block order.
inline RationalFunction fold_check(const RationalFunction& f, const std::vector<std::vector<std::size_t>>& blocks) {
  const std::size_t n = f.nvars();
  std::vector<int> block_of(n, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (std::size_t i : blocks[b]) {
      if (i >= n || block_of[i] != -1) throw RingMismatch("blocks must partition the variables");
      block_of[i] = static_cast<int>(b);
    }
  std::vector<RationalFunction> images;
  for (std::size_t i = 0; i < n; ++i) {
    if (block_of[i] < 0) throw RingMismatch("blocks must partition the variables");
    images.push_back(RationalFunction::variable(blocks.size(), static_cast<std::size_t>(block_of[i])));
  }
  return substitute(f, images);
}

using Triple = std::array<mpz_class, 3>;

/// Markov triples reached from (1,1,1) by at most `depth` numeric mutations,
/// each sorted ascending, in breadth-first discovery order.
inline std::vector<Triple> markov_triples(std::size_t depth) {
  std::vector<Triple> out;
  std::set<std::array<std::string, 3>> seen;
  auto key = [](Triple t) {
    std::sort(t.begin(), t.end());
    return std::array<std::string, 3>{t[0].get_str(), t[1].get_str(), t[2].get_str()};
  };
  std::vector<Triple> frontier{{1, 1, 1}};
  for (std::size_t level = 0; level <= depth; ++level) {
    std::vector<Triple> next;
    for (const Triple& t : frontier) {
      Triple s = t;
      std::sort(s.begin(), s.end());
      if (seen.insert(key(t)).second) out.push_back(s);
      if (level == depth) continue;
      for (std::size_t k = 0; k < 3; ++k) {
        Triple m = t;
        const mpz_class& u = t[(k + 1) % 3];
        const mpz_class& v = t[(k + 2) % 3];
        m[k] = (u * u + v * v) / t[k];
        next.push_back(m);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

/// Exact values of g^1, g^2, ... applied to a numeric A-seed: entry t is the
/// seed after t applications. Non-integral values are kept as rationals.
inline std::vector<std::vector<mpq_class>> numeric_orbit(const Quiver& q, const GroupElement& g,
                                                         std::vector<mpq_class> start, std::size_t steps) {
  check_element(q, g);
  std::vector<std::vector<mpq_class>> out{start};
  for (std::size_t s = 0; s < steps; ++s) {
    Quiver cur = q;
    std::vector<mpq_class> v = out.back();
    for (std::size_t k : g.path) {
      mpq_class in = 1;
      mpq_class outp = 1;
      for (std::size_t j = 0; j < cur.size(); ++j) {
        const int64_t e = cur(k, j);
        for (int64_t t = 0; t < (e < 0 ? -e : e); ++t) (e < 0 ? in : outp) *= v[j];
      }
      if (v[k] == 0) throw ZeroDivision("numeric exchange divides by zero");
      v[k] = (in + outp) / v[k];
      cur = cur.mutate(k);
    }
    std::vector<mpq_class> next(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) next[i] = v[g.perm[i]];
    out.push_back(std::move(next));
  }
  return out;
}

/// The rotation generator {1,(12...k)}.
inline GroupElement shift_generator(std::size_t k) {
  GroupElement g{{0}, identity_bijection(k)};
  for (std::size_t i = 0; i < k; ++i) g.perm[i] = (i + 1) % k;
  return g;
}

/// First n_terms of the sequence produced by {1,(1..k)} on the all-ones seed
/// of q. Throws if a term is not an integer.
inline std::vector<mpz_class> somos_sequence(const Quiver& q, std::size_t n_terms) {
  const std::size_t k = q.size();
  if (n_terms < k) throw Error("somos_sequence needs at least as many terms as nodes");
  auto orbit = numeric_orbit(q, shift_generator(k), std::vector<mpq_class>(k, 1), n_terms - k);
  std::vector<mpz_class> out(k, 1);
  for (std::size_t s = 1; s < orbit.size(); ++s) {
    const mpq_class& t = orbit[s][k - 1];
    if (t.get_den() != 1) throw Error("non-integral term " + t.get_str() + " at position " + std::to_string(out.size() + 1));
    out.push_back(t.get_num());
  }
  return out;
}

/// (F + sqrt(F^2 - 4)) / 2.
inline double limit_multiplier(double f) {
  if (!(f >= 2.0)) throw Error("multiplier needs F >= 2");
  return (f + std::sqrt(f * f - 4.0)) / 2.0;
}

/// a1, a2, a3, ... with a_{k+1} = (a_k^2 + 1) / a_{k-1}: the affine A1 exchange.
inline std::vector<double> a1_affine_orbit(double a1, double a2, std::size_t n) {
  if (!(a1 > 0 && a2 > 0)) throw Error("orbit needs positive initial values");
  std::vector<double> out{a1, a2};
  while (out.size() < n) {
    const double b = out.back();
    out.push_back((b * b + 1.0) / out[out.size() - 2]);
  }
  out.resize(n);
  return out;
}

/// Triangles given by their three edge indices.
struct Triangulation {
  std::size_t edges = 0;
  std::vector<std::array<std::size_t, 3>> triangles;
};

/// Sum over triangles of (a_e1^2 + a_e2^2 + a_e3^2) / (a_e1 a_e2 a_e3).
inline RationalFunction horocycle_invariant(const Triangulation& tri) {
  const std::size_t n = std::max<std::size_t>(tri.edges, 1);
  RationalFunction sum(n, 0);
  for (const auto& t : tri.triangles) {
    RationalFunction num(n, 0);
    RationalFunction den(n, 1);
    for (std::size_t e : t) {
      if (e >= tri.edges) throw Error("edge index out of range");
      const RationalFunction a = RationalFunction::variable(n, e);
      num += a * a;
      den *= a;
    }
    sum += num / den;
  }
  return sum;
}

/// True iff paired functions share their denominator vectors.
inline bool denominator_correspondence(const std::vector<RationalFunction>& a_basis,
                                       const std::vector<RationalFunction>& x_basis) {
  if (a_basis.size() != x_basis.size()) throw Error("bases differ in length");
  bool ok = true;
  for (std::size_t i = 0; i < a_basis.size(); ++i)
    if (a_basis[i].denominator_vector() != x_basis[i].denominator_vector()) ok = false;
  return ok;
}

using IntMatrix = std::vector<std::vector<int64_t>>;

/// Exponents e with h = prod basis_i^{e_i}, or absence.
inline std::optional<std::vector<int64_t>> monomial_exponents(const RationalFunction& h,
                                                              const std::vector<RationalFunction>& basis) {
  const std::size_t k = basis.size();
  const std::size_t nv = h.nvars();
  const std::size_t samples = 3 * k + 4;
  std::mt19937_64 rng(0xc0ffee);
  std::uniform_real_distribution<double> dist(0.5, 2.5);
  Eigen::MatrixXd a(samples, k);
  Eigen::VectorXd b(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<double> pt(nv);
    for (auto& x : pt) x = dist(rng);
    try {
      for (std::size_t i = 0; i < k; ++i) a(s, i) = std::log(std::abs(evaluate_float(basis[i], pt)));
      b(s) = std::log(std::abs(evaluate_float(h, pt)));
    } catch (const ZeroDivision&) {
      return std::nullopt;
    }
  }
  Eigen::VectorXd e = a.colPivHouseholderQr().solve(b);
  std::vector<int64_t> out(k);
  RationalFunction check(nv, 1);
  for (std::size_t i = 0; i < k; ++i) {
    if (!std::isfinite(e(i)) || std::abs(e(i)) > 1e6) return std::nullopt;
    out[i] = std::llround(e(i));
    check *= basis[i].pow(out[i]);
  }
  if (!(check == h)) return std::nullopt;
  return out;
}

/// For each generator the matrix M with M[i][j] the exponent of basis_i in
/// the image of basis_j.
inline std::vector<IntMatrix> monomial_rep(const Quiver& q, const std::vector<GroupElement>& generators,
                                           const std::vector<RationalFunction>& basis, Flavor flavor) {
  std::vector<IntMatrix> out;
  for (const auto& g : generators) {
    const std::vector<RationalFunction> images = action_images(q, g, flavor);
    IntMatrix m(basis.size(), std::vector<int64_t>(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j) {
      check_ring(q, basis[j], flavor);
      auto e = monomial_exponents(substitute(basis[j], images), basis);
      if (!e) throw NotLaurent("image of basis element " + std::to_string(j + 1) + " is not a monomial in the basis");
      for (std::size_t i = 0; i < basis.size(); ++i) m[i][j] = (*e)[i];
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace cluster
