#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cluster/arith/modp.hpp"
#include "cluster/arith/polynomial.hpp"

namespace cluster::detail {

inline constexpr uint64_t kGcdPrime = 2305843009213693951ULL;  // 2^61 - 1

/// Dense univariate polynomial over Z/p, lowest degree first.
using UniModP = std::vector<uint64_t>;

inline void trim(UniModP& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline UniModP monic(UniModP a, const ModP& f) {
  trim(a);
  if (a.empty() || a.back() == 1) return a;
  const uint64_t inv = f.inv(a.back());
  for (auto& c : a) c = f.mul(c, inv);
  return a;
}

/// Monic gcd; the zero polynomial is the empty vector.
inline UniModP gcd_mod(UniModP a, UniModP b, const ModP& f) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    const uint64_t inv = f.inv(b.back());
    while (a.size() >= b.size()) {
      const uint64_t q = f.mul(a.back(), inv);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j) a[j + shift] = f.sub(a[j + shift], f.mul(q, b[j]));
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return monic(std::move(a), f);
}

inline UniModP uni_mul(const UniModP& a, const UniModP& b, const ModP& f) {
  if (a.empty() || b.empty()) return {};
  UniModP r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  return r;
}

/// Quotient of a by a nonzero b; the remainder is discarded.
inline UniModP uni_div(UniModP a, const UniModP& b, const ModP& f) {
  trim(a);
  if (a.size() < b.size()) return {};
  UniModP q(a.size() - b.size() + 1, 0);
  const uint64_t inv = f.inv(b.back());
  while (a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const uint64_t c = f.mul(a.back(), inv);
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[j + shift] = f.sub(a[j + shift], f.mul(c, b[j]));
    trim(a);
  }
  return q;
}

inline uint64_t uni_eval(const UniModP& a, uint64_t x, const ModP& f) {
  uint64_t r = 0;
  for (std::size_t i = a.size(); i-- > 0;) r = f.add(f.mul(r, x), a[i]);
  return r;
}

/// Image of p in Z/p[var] after evaluating every other variable at point.
inline UniModP project(const Polynomial& p, std::size_t var, const std::vector<uint64_t>& point, const ModP& f) {
  UniModP out(static_cast<std::size_t>(p.degree_in(var)) + 1, 0);
  for (const auto& t : p.terms()) {
    uint64_t v = f.reduce(t.coef);
    for (std::size_t i = 0; i < p.nvars(); ++i)
      if (i != var && t.monomial[i] != 0) v = f.mul(v, f.pow(point[i], static_cast<uint64_t>(t.monomial[i])));
    uint64_t& slot = out[static_cast<std::size_t>(t.monomial[var])];
    slot = f.add(slot, v);
  }
  return out;
}

/// True when a and b provably share no factor of positive degree. For each
/// variable v, a random evaluation of the others that keeps a's leading
/// coefficient in v nonzero maps gcd(a, b) onto a divisor of the image gcd
/// with the same v-degree, so a constant image gcd rules v out.
inline bool provably_coprime(const Polynomial& a, const Polynomial& b) {
  const ModP f{kGcdPrime};
  std::mt19937_64 rng(0x5eedULL + a.size() * 7919 + b.size());
  std::uniform_int_distribution<uint64_t> dist(1, kGcdPrime - 1);
  std::vector<uint64_t> point(a.nvars());
  for (std::size_t v = 0; v < a.nvars(); ++v) {
    if (!a.uses_variable(v)) continue;
    bool ruled_out = false;
    for (int attempt = 0; attempt < 3 && !ruled_out; ++attempt) {
      for (auto& x : point) x = dist(rng);
      UniModP ua = project(a, v, point, f);
      if (ua.back() == 0) continue;
      UniModP g = gcd_mod(std::move(ua), project(b, v, point, f), f);
      if (g.size() > 1) return false;
      ruled_out = true;
    }
    if (!ruled_out) return false;
  }
  return true;
}

// Brown's dense modular gcd. Polynomials over Z/p are unordered term lists;
// at recursion depth k only vars[0..k) occur, vars[k-1] is interpolated and
// vars[0] is the univariate base.

using TermsP = std::vector<std::pair<Monomial, uint64_t>>;
using YPoly = std::unordered_map<Monomial, UniModP, MonomialHash>;

inline bool lex_greater(const Monomial& a, const Monomial& b, const std::vector<std::size_t>& vars, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t v = vars[i];
    if (a[v] != b[v]) return a[v] > b[v];
  }
  return false;
}

inline std::size_t lead_index(const TermsP& t, const std::vector<std::size_t>& vars, std::size_t k) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < t.size(); ++i)
    if (lex_greater(t[i].first, t[best].first, vars, k)) best = i;
  return best;
}

inline Monomial cleared(Monomial m, std::size_t y) {
  m.set(y, 0);
  return m;
}

inline YPoly group_by(const TermsP& a, std::size_t y) {
  YPoly out;
  for (const auto& [m, c] : a) {
    UniModP& u = out[cleared(m, y)];
    const std::size_t e = static_cast<std::size_t>(m[y]);
    if (u.size() <= e) u.resize(e + 1, 0);
    u[e] = c;
  }
  return out;
}

inline TermsP flatten(const YPoly& g, std::size_t y) {
  TermsP out;
  for (const auto& [m, u] : g) {
    for (std::size_t e = 0; e < u.size(); ++e) {
      if (u[e] == 0) continue;
      Monomial mm = m;
      mm.set(y, static_cast<int32_t>(e));
      out.emplace_back(mm, u[e]);
    }
  }
  return out;
}

inline UniModP content_y(const YPoly& g, const ModP& f) {
  UniModP c;
  for (const auto& [m, u] : g) {
    c = c.empty() ? monic(u, f) : gcd_mod(c, u, f);
    if (c.size() == 1) break;
  }
  return c;
}

inline TermsP evaluate_y(const YPoly& g, uint64_t beta, const ModP& f) {
  TermsP out;
  for (const auto& [m, u] : g) {
    uint64_t v = uni_eval(u, beta, f);
    if (v != 0) out.emplace_back(m, v);
  }
  return out;
}

inline const Monomial& lead_key(const YPoly& g, const std::vector<std::size_t>& vars, std::size_t k) {
  const Monomial* best = nullptr;
  for (const auto& [m, u] : g)
    if (best == nullptr || lex_greater(m, *best, vars, k)) best = &m;
  return *best;
}

inline void make_monic(TermsP& t, const std::vector<std::size_t>& vars, std::size_t k, const ModP& f) {
  const uint64_t inv = f.inv(t[lead_index(t, vars, k)].second);
  for (auto& term : t) term.second = f.mul(term.second, inv);
}

/// Monic (in lex order over vars[0..k)) gcd of nonzero a and b.
inline TermsP gcd_p(const TermsP& a, const TermsP& b, const std::vector<std::size_t>& vars, std::size_t k,
                    const ModP& f, std::mt19937_64& rng) {
  if (k == 1) {
    const std::size_t x = vars[0];
    auto dense = [x](const TermsP& t) {
      UniModP u;
      for (const auto& [m, c] : t) {
        const std::size_t e = static_cast<std::size_t>(m[x]);
        if (u.size() <= e) u.resize(e + 1, 0);
        u[e] = c;
      }
      return u;
    };
    UniModP g = gcd_mod(dense(a), dense(b), f);
    TermsP out;
    for (std::size_t e = 0; e < g.size(); ++e)
      if (g[e] != 0) out.emplace_back(Monomial::variable(x, static_cast<int32_t>(e)), g[e]);
    return out;
  }
  const std::size_t y = vars[k - 1];
  YPoly ga = group_by(a, y);
  YPoly gb = group_by(b, y);
  const UniModP ca = content_y(ga, f);
  const UniModP cb = content_y(gb, f);
  const UniModP c = gcd_mod(ca, cb, f);
  if (ca.size() > 1)
    for (auto& [m, u] : ga) u = uni_div(u, ca, f);
  if (cb.size() > 1)
    for (auto& [m, u] : gb) u = uni_div(u, cb, f);
  const UniModP lca = ga.at(lead_key(ga, vars, k - 1));
  const UniModP lcb = gb.at(lead_key(gb, vars, k - 1));
  const UniModP gamma = gcd_mod(lca, lcb, f);

  auto max_deg = [](const YPoly& g) {
    std::size_t d = 0;
    for (const auto& [m, u] : g) d = std::max(d, u.size() - 1);
    return d;
  };
  const std::size_t da = max_deg(ga);
  const std::size_t db = max_deg(gb);
  std::size_t bound = std::min(da, db);
  std::uniform_int_distribution<uint64_t> dist(1, f.p - 1);
  {
    // Tighter bound on the y-degree from one univariate image.
    std::vector<uint64_t> point(kMaxVariables);
    for (auto& v : point) v = dist(rng);
    auto image = [&](const YPoly& g, std::size_t d) {
      UniModP u(d + 1, 0);
      for (const auto& [m, coeffs] : g) {
        uint64_t w = 1;
        for (std::size_t i = 0; i + 1 < k; ++i)
          if (m[vars[i]] != 0) w = f.mul(w, f.pow(point[vars[i]], static_cast<uint64_t>(m[vars[i]])));
        for (std::size_t e = 0; e < coeffs.size(); ++e) u[e] = f.add(u[e], f.mul(w, coeffs[e]));
      }
      return u;
    };
    UniModP ua = image(ga, da);
    UniModP ub = image(gb, db);
    if (ua.back() != 0 && ub.back() != 0) bound = std::min(bound, gcd_mod(ua, ub, f).size() - 1);
  }
  const std::size_t needed = bound + gamma.size();

  YPoly h;
  UniModP q{1};
  Monomial lm;
  bool have = false;
  std::size_t count = 0;
  while (count < needed) {
    const uint64_t beta = dist(rng);
    if (uni_eval(lca, beta, f) == 0 || uni_eval(lcb, beta, f) == 0) continue;
    const uint64_t qb = uni_eval(q, beta, f);
    if (qb == 0) continue;
    TermsP g = gcd_p(evaluate_y(ga, beta, f), evaluate_y(gb, beta, f), vars, k - 1, f, rng);
    const Monomial glm = g[lead_index(g, vars, k - 1)].first;
    if (have) {
      if (lex_greater(glm, lm, vars, k - 1)) continue;
      if (lex_greater(lm, glm, vars, k - 1)) {
        h.clear();
        q = {1};
        count = 0;
      }
    }
    lm = glm;
    have = true;
    const uint64_t scale = uni_eval(gamma, beta, f);
    std::unordered_map<Monomial, uint64_t, MonomialHash> gmap;
    for (const auto& [m, v] : g) gmap[m] = f.mul(v, scale);
    for (const auto& [m, v] : gmap) h.try_emplace(m);
    const uint64_t inv = f.inv(uni_eval(q, beta, f));
    for (auto& [m, u] : h) {
      auto it = gmap.find(m);
      const uint64_t gv = it == gmap.end() ? 0 : it->second;
      const uint64_t delta = f.mul(f.sub(gv, uni_eval(u, beta, f)), inv);
      if (delta == 0) continue;
      if (u.size() < q.size()) u.resize(q.size(), 0);
      for (std::size_t e = 0; e < q.size(); ++e) u[e] = f.add(u[e], f.mul(delta, q[e]));
    }
    q = uni_mul(q, UniModP{f.sub(0, beta), 1}, f);
    ++count;
  }
  for (auto it = h.begin(); it != h.end();) {
    trim(it->second);
    it = it->second.empty() ? h.erase(it) : std::next(it);
  }
  const UniModP ch = content_y(h, f);
  for (auto& [m, u] : h) u = uni_mul(uni_div(u, ch, f), c, f);
  TermsP out = flatten(h, y);
  make_monic(out, vars, k, f);
  return out;
}

inline const std::vector<uint64_t>& gcd_primes() {
  static const std::vector<uint64_t> primes = [] {
    std::vector<uint64_t> ps;
    mpz_class p = mpz_class(1) << 62;
    for (int i = 0; i < 64; ++i) {
      mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
      ps.push_back(p.get_ui());
    }
    return ps;
  }();
  return primes;
}

/// Gcd over Z of primitive a, b using the same variables, or absence if the
/// prime budget runs out. The result is primitive with positive leading
/// coefficient and verified by exact division.
inline std::optional<Polynomial> modular_gcd(const Polynomial& a, const Polynomial& b) {
  const std::size_t n = a.nvars();
  std::vector<std::size_t> vars;
  for (std::size_t v = 0; v < n; ++v)
    if (a.uses_variable(v) || b.uses_variable(v)) vars.push_back(v);
  if (vars.empty()) return std::nullopt;
  std::stable_sort(vars.begin(), vars.end(), [&](std::size_t x, std::size_t y) {
    return std::max(a.degree_in(x), b.degree_in(x)) > std::max(a.degree_in(y), b.degree_in(y));
  });
  const std::size_t k = vars.size();
  auto lex_lead = [&](const Polynomial& p) -> const mpz_class& {
    std::size_t best = 0;
    for (std::size_t i = 1; i < p.size(); ++i)
      if (lex_greater(p.terms()[i].monomial, p.terms()[best].monomial, vars, k)) best = i;
    return p.terms()[best].coef;
  };
  const mpz_class& lca = lex_lead(a);
  const mpz_class& lcb = lex_lead(b);
  mpz_class gamma;
  mpz_gcd(gamma.get_mpz_t(), lca.get_mpz_t(), lcb.get_mpz_t());

  std::mt19937_64 rng(0xc0ffeeULL);
  std::unordered_map<Monomial, mpz_class, MonomialHash> acc;
  mpz_class modulus = 0;
  Monomial lm;
  std::optional<Polynomial> last;
  for (uint64_t p : gcd_primes()) {
    const ModP f{p};
    if (f.reduce(lca) == 0 || f.reduce(lcb) == 0) continue;
    auto reduce = [&](const Polynomial& poly) {
      TermsP t;
      t.reserve(poly.size());
      for (const auto& term : poly.terms()) {
        uint64_t c = f.reduce(term.coef);
        if (c != 0) t.emplace_back(term.monomial, c);
      }
      return t;
    };
    TermsP g = gcd_p(reduce(a), reduce(b), vars, k, f, rng);
    const Monomial glm = g[lead_index(g, vars, k)].first;
    if (glm.is_one()) return Polynomial(n, 1);
    if (modulus != 0) {
      if (lex_greater(glm, lm, vars, k)) continue;
      if (lex_greater(lm, glm, vars, k)) {
        acc.clear();
        modulus = 0;
        last.reset();
      }
    }
    lm = glm;
    const uint64_t scale = f.reduce(gamma);
    if (modulus == 0) {
      for (const auto& [m, v] : g) acc[m] = f.mul(v, scale);
      modulus = p;
    } else {
      std::unordered_map<Monomial, uint64_t, MonomialHash> gmap;
      for (const auto& [m, v] : g) gmap[m] = f.mul(v, scale);
      for (const auto& [m, v] : gmap) acc.try_emplace(m, 0);
      const mpz_class mp(static_cast<unsigned long>(p));
      mpz_class minv;
      mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), mp.get_mpz_t());
      const uint64_t minv_p = f.reduce(minv);
      for (auto& [m, r] : acc) {
        auto it = gmap.find(m);
        const uint64_t target = it == gmap.end() ? 0 : it->second;
        const uint64_t t = f.mul(f.sub(target, f.reduce(r)), minv_p);
        r += modulus * mpz_class(static_cast<unsigned long>(t));
      }
      modulus *= mp;
    }
    const mpz_class half = modulus / 2;
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (const auto& [m, r] : acc) {
      if (r == 0) continue;
      terms.push_back({m, r > half ? mpz_class(r - modulus) : r});
    }
    Polynomial cand = Polynomial::from_terms(n, std::move(terms));
    cand = cand.divided_exact(cand.integer_content());
    if (cand.leading_coef() < 0) cand = -cand;
    if (last && *last == cand) {
      if (divide_exact(a, cand) && divide_exact(b, cand)) return cand;
    }
    last = std::move(cand);
  }
  return std::nullopt;
}

}  // namespace cluster::detail
