#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "cluster/catalog/functions.hpp"
#include "cluster/catalog/quivers.hpp"
#include "cluster/modular/action.hpp"
#include "cluster/quiver/mutation_class.hpp"

namespace cluster::catalog {

/// Every {i, sigma} with mu_i(q) isomorphic to q, over all closing sigma.
inline std::vector<GroupElement> single_mutation_generators(const Quiver& q) {
  std::vector<GroupElement> out;
  const auto auts = automorphisms(q);
  for (std::size_t i : q.mutable_nodes()) {
    auto s = is_isomorphic(q, q.mutate(i));
    if (!s) continue;
    for (const auto& a : auts) out.push_back({{i}, compose(*s, a)});
  }
  return out;
}

/// Rotation {<>,(12...n)} of the n-cycle.
inline GroupElement cycle_rotation(std::size_t n) {
  GroupElement g{{}, identity_bijection(n)};
  for (std::size_t i = 0; i < n; ++i) g.perm[i] = (i + 1) % n;
  return g;
}

/// {1 2 .. n (n-2) .. 1, (n-1 n)} on the n-cycle; {1231,(23)} when n = 3.
/// Found by search and pinned by t(F) = F^-1 for n = 3..6.
inline GroupElement cycle_flip(std::size_t n) {
  GroupElement g{{}, identity_bijection(n)};
  for (std::size_t i = 0; i < n; ++i) g.path.push_back(i);
  for (std::size_t i = n - 2; i-- > 0;) g.path.push_back(i);
  std::swap(g.perm[n - 2], g.perm[n - 1]);
  return g;
}

/// {123,()} on the A3 path: order 6, inverts x1 x3.
inline GroupElement a3_path_generator() { return {{0, 1, 2}, identity_bijection(3)}; }

/// gamma = {A1,(A1 A2)}.
inline GroupElement t_pqr_gamma(std::size_t n) {
  GroupElement g{{0}, identity_bijection(n)};
  std::swap(g.perm[0], g.perm[1]);
  return g;
}

inline GroupElement g2_gamma() { return parse_group_element("{1,(12)}", 4); }
inline GroupElement g2_tau() { return parse_group_element("{34,(12)}", 4); }
inline GroupElement g2_r() { return parse_group_element("{414,(132)}", 4); }

/// Aut(Q4) together with {1231,(23)}.
inline std::vector<GroupElement> d4_q4_generators() {
  const Quiver q = d4_11(4);
  std::vector<GroupElement> out;
  for (const auto& a : automorphisms(q))
    if (a != identity_bijection(6)) out.push_back({{}, a});
  out.push_back(parse_group_element("{1231,(23)}", 6));
  return out;
}

/// Aut(Q1) and {214,(142)} {314,(143)}^-1 at Q1, conjugated to Q4 along a
/// mutation path from Q1 to Q4. Those two cycles only close up read as maps
/// P(Q1) -> Q1, so they are written here inverted.
inline std::vector<GroupElement> d4_wd4_generators_at_q4() {
  const Quiver q1 = d4_11(1);
  const Quiver q4 = d4_11(4);
  std::vector<GroupElement> at_q1;
  for (const auto& a : automorphisms(q1))
    if (a != identity_bijection(6)) at_q1.push_back({{}, a});
  at_q1.push_back(compose(parse_group_element("{214,(124)}", 6), inverse(parse_group_element("{314,(134)}", 6))));
  const PathWitness w = find_path(q1, q4, 16);
  const GroupElement h{w.path, w.sigma};
  std::vector<GroupElement> out;
  for (const auto& g : at_q1) out.push_back(conjugate(g, h));
  return out;
}

/// One machine-checked statement about a catalog entry.
struct Check {
  std::string label;
  bool passed = false;
  std::string detail;
};

namespace detail {

inline RationalFunction fn(const std::string& text, const VariableNames& names) { return parse_function(text, names); }

inline Check check(std::string label, const std::function<bool()>& body) {
  Check c{std::move(label), false, {}};
  try {
    c.passed = body();
  } catch (const std::exception& e) {
    c.detail = e.what();
  }
  return c;
}

inline std::string cycle_function(std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) s += " + ";
    s += "1/(a" + std::to_string(i + 1) + "*a" + std::to_string((i + 1) % n + 1) + ")";
  }
  return s;
}

/// (a1^2 + a2^2 + product of the X2 nodes) / (a1 a2), the A-side square root of G.
inline std::string t_pqr_sqrt_g(std::size_t p, std::size_t q, std::size_t r) {
  std::string prod;
  const char* legs[] = {"b2", "c2", "d2"};
  const std::size_t lens[] = {p, q, r};
  for (int i = 0; i < 3; ++i)
    if (lens[i] >= 2) prod += (prod.empty() ? "" : "*") + std::string(legs[i]);
  if (prod.empty()) prod = "1";
  return "(a1^2 + a2^2 + " + prod + ")/(a1*a2)";
}

inline std::vector<std::size_t> t_pqr_params(const std::string& name) { return parse_args(name, "t_pqr"); }

struct Spec {
  std::string name;
  std::string text;
  Flavor flavor;
  std::string note;
};

inline std::vector<InvariantRecord> build_invariants(const Entry& e) {
  const Quiver& q = e.quiver;
  std::vector<Spec> specs;
  std::vector<GroupElement> gens;
  const std::string& n = e.name;
  if (n == "a1_affine") {
    gens = {parse_group_element("{1,(12)}", 2)};
    specs = {{"F", "(1 + a1^2 + a2^2)/(a1*a2)", Flavor::A, "invariant of the affine A1 ensemble"},
             {"G", "(x2*(x1 + 1) + 1)^2/(x1*x2)", Flavor::X, "X invariant with rho*(G) = F^2"}};
  } else if (n == "markov") {
    gens = single_mutation_generators(q);
    specs = {{"F", "(a1^2 + a2^2 + a3^2)/(a1*a2*a3)", Flavor::A, "Markov invariant, F(1,1,1) = 3"},
             {"G", "x1*x2*x3", Flavor::X, "Casimir of the Markov quiver"}};
  } else if (n == "bc21") {
    gens = single_mutation_generators(q);
    specs = {{"F", "(a1^4 + (a2 + a3)^2)/(a1^2*a2*a3)", Flavor::A, ""}};
  } else if (n == "bc24") {
    gens = single_mutation_generators(q);
    specs = {{"F", "(a1^2 + 2*a1*(a2^2 + a3^2) + a2^4 + a3^4)/(a1*a2^2*a3^2)", Flavor::A, ""}};
  } else if (n == "somos4") {
    gens = {shift_generator(4)};
    specs = {{"F4", "(a1^2*a4^2 + a1*a3^3 + a4*a2^3 + a2^2*a3^2)/(a1*a2*a3*a4)", Flavor::A, "invariant along Somos-4"}};
  } else if (n == "somos5") {
    gens = {shift_generator(5)};
    specs = {{"F5",
              "(a1^2*a4^2*a5 + a1*a2^2*a5^2 + a1*a3^2*a4^2 + a2^2*a3^2*a5 + a2*a3^3*a4)/(a1*a2*a3*a4*a5)",
              Flavor::A, "invariant along Somos-5"}};
  } else if (n == "somos6") {
    gens = {shift_generator(6)};
    specs = {{"F6",
              "(a1^2*a2*a5*a6^2 + a1^2*a4*a5^3 + a2^3*a3*a6^2 + a1*a3^2*a4*a5^2 + a2^2*a3*a4^2*a6 + a1*a3*a4^3*a5 + "
              "a2*a3^3*a4*a6 + a3^3*a4^3)/(a1*a2*a3*a4*a5*a6)",
              Flavor::A, "invariant along Somos-6"}};
  } else if (n == "a3_cycle" || n.rfind("d_cycle(", 0) == 0) {
    gens = {cycle_rotation(q.size())};
    specs = {{"F", cycle_function(q.size()), Flavor::A, "rotation invariant; the flip t inverts it"}};
  } else if (n == "g2_33") {
    gens = {g2_gamma()};
    specs = {{"F1", "((a1^3 + a2^3)*(a1 + a2) + a3*a4*(2*a1^2 + a1*a2 + 2*a2^2) + a3^2*a4^2)/(a1^2*a2^2*a3*a4)",
              Flavor::A, ""},
             {"F2", "((a1 + a2)^2 + a3*a4)/(a1*a2*a3^2)", Flavor::A, ""}};
  } else if (n == "d4_11(Q4)") {
    gens = d4_wd4_generators_at_q4();
    specs = {{"F3", "(a1*a4 + a2*a5 + a3*a6)^3/(a1*a2*a3*a4*a5*a6)", Flavor::A,
              "W(D4) invariant; generators transported from Q1"}};
  } else if (n == "a_n(3)") {
    const GroupElement g = a3_path_generator();
    gens = {compose(g, g)};
    specs = {{"G", "x1*x3", Flavor::X, "Casimir; gamma inverts it, gamma^2 fixes it"}};
  } else if (n.rfind("t_pqr(", 0) == 0) {
    auto p = t_pqr_params(n);
    gens = {t_pqr_gamma(q.size())};
    specs.push_back({"sqrtG", t_pqr_sqrt_g(p[0], p[1], p[2]), Flavor::A, "A-side square root of G"});
    for (std::size_t i = 2; i < q.size(); ++i) specs.push_back({e.a_names[i], e.a_names[i], Flavor::A, ""});
    specs.push_back({"G", "(x2*(x1 + 1) + 1)^2/(x1*x2)", Flavor::X, ""});
    for (std::size_t i = 2; i < q.size(); ++i) {
      const std::string& x = e.x_names[i];
      const bool second = x.size() == 2 && x[1] == '2';
      specs.push_back({x + (second ? "*h" : ""), second ? x + "*(x2*(x1 + 1) + 1)" : x, Flavor::X, ""});
    }
  }
  std::vector<InvariantRecord> out;
  for (const auto& s : specs) {
    const VariableNames& names = s.flavor == Flavor::A ? e.a_names : e.x_names;
    out.push_back(make_invariant(s.name, q, fn(s.text, names), s.flavor, gens, names, s.note));
  }
  return out;
}

}  // namespace detail

/// Invariant records of an entry, built and verified once per process.
inline const std::vector<InvariantRecord>& invariants(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const std::vector<InvariantRecord>>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(name);
    if (it != cache.end()) return *it->second;
  }
  auto built = std::make_shared<const std::vector<InvariantRecord>>(detail::build_invariants(build(name)));
  std::lock_guard<std::mutex> lock(mu);
  return *cache.emplace(name, std::move(built)).first->second;
}

inline const InvariantRecord& invariant(const std::string& entry, const std::string& fn_name) {
  for (const auto& r : invariants(entry))
    if (r.name == fn_name) return r;
  throw CatalogError("no invariant " + fn_name + " in " + entry);
}

/// The D4^(1,1) correspondence basis at Q4, A side then X side.
inline std::pair<std::vector<RationalFunction>, std::vector<RationalFunction>> d4_correspondence_basis() {
  const VariableNames a = indexed_names("a", 6);
  const VariableNames x = indexed_names("x", 6);
  return {{parse_function("(a1*a4 + a2*a5 + a3*a6)^2/(a1*a2*a3*a4*a5*a6)", a),
           parse_function("(a1*a4 + a2*a5 + a3*a6)/(a4*a5*a6)", a), parse_function("a1/a4", a)},
          {parse_function("1/(x1*x2*x3*x4*x5*x6)", x), parse_function("1/(x4*x5*x6)", x), parse_function("x1/x4", x)}};
}

/// X monomials with the denominator vectors of F1 and F2 on G2^(3,3).
inline std::vector<RationalFunction> g2_x_basis() {
  const VariableNames x = indexed_names("x", 4);
  return {parse_function("1/(x1^2*x2^2*x3*x4)", x), parse_function("1/(x1*x2*x3^2)", x)};
}

/// Every invariant record and pinned identity of an entry.
inline std::vector<Check> verify(const std::string& name) {
  using detail::check;
  const Entry e = build(name);
  const Quiver& q = e.quiver;
  std::vector<Check> out;
  std::vector<InvariantRecord> records;
  try {
    records = invariants(name);
  } catch (const std::exception& ex) {
    out.push_back({"invariant records", false, ex.what()});
  }
  for (const auto& r : records) {
    auto flags = invariance_report(r.quiver, r.function, r.generators, r.flavor);
    for (std::size_t i = 0; i < flags.size(); ++i)
      out.push_back({r.name + " fixed by " + format_group_element(r.generators[i]), flags[i], {}});
  }
  auto fa = [&](const std::string& t) { return parse_function(t, e.a_names); };
  auto fx = [&](const std::string& t) { return parse_function(t, e.x_names); };
  if (name == "a2") {
    out.push_back(check("{1,(12)} has order 5", [&] {
      return order(q, parse_group_element("{1,(12)}", 2), 10) == std::optional<std::size_t>(5);
    }));
  } else if (name == "a3_cycle" || name.rfind("d_cycle(", 0) == 0) {
    const std::size_t n = q.size();
    const GroupElement t = cycle_flip(n);
    const GroupElement r = cycle_rotation(n);
    const RationalFunction f = fa(detail::cycle_function(n));
    out.push_back(check("t = " + format_group_element(t) + " sends F to 1/F",
                        [&] { return act(q, t, f, Flavor::A) == f.inverse(); }));
    if (n == 3) {
      out.push_back(check("t has order 2", [&] { return order(q, t, 6) == std::optional<std::size_t>(2); }));
      out.push_back(check("r has order 3", [&] { return order(q, r, 6) == std::optional<std::size_t>(3); }));
      out.push_back(check("t and r commute", [&] { return is_trivial(q, compose(compose(t, r), inverse(compose(r, t)))); }));
    }
  } else if (name == "a1_affine") {
    out.push_back(check("rho*(G) = F^2", [&] {
      return rho_pullback(q, invariant(name, "G").function) == invariant(name, "F").function.pow(2);
    }));
  } else if (name == "markov") {
    out.push_back(check("F(1,1,1) = 3", [&] {
      return evaluate_exact(invariant(name, "F").function, {1, 1, 1}) == 3;
    }));
    out.push_back(check("rho*(x1 x2 x3) = 1", [&] { return rho_pullback(q, fx("x1*x2*x3")) == RationalFunction(3, 1); }));
    out.push_back(check("a3 = 1 sends F to the affine A1 invariant", [&] {
      return evaluate_frozen_at_one(invariant(name, "F").function, {0, 1}) ==
             parse_function("(1 + a1^2 + a2^2)/(a1*a2)", indexed_names("a", 2));
    }));
  } else if (name == "somos4" || name == "somos5" || name == "somos6") {
    const std::size_t k = q.size();
    out.push_back(check("first 20 terms are integers", [&] { return somos_sequence(q, 20).size() == 20; }));
    out.push_back(check("F constant along the orbit", [&] {
      const RationalFunction& f = invariants(name).front().function;
      auto orbit = numeric_orbit(q, shift_generator(k), std::vector<mpq_class>(k, 1), 16);
      const mpq_class v0 = evaluate_exact(f, orbit.front());
      for (const auto& s : orbit)
        if (evaluate_exact(f, s) != v0) return false;
      return true;
    }));
  } else if (name == "g2_33") {
    const std::vector<RationalFunction> basis{invariant(name, "F1").function, invariant(name, "F2").function};
    const IntMatrix tau{{1, 1}, {0, -1}};
    const IntMatrix rot{{1, 1}, {-1, 0}};
    const IntMatrix swap{{0, 1}, {1, 0}};
    const GroupElement tr = compose(g2_tau(), g2_r());
    for (Flavor fl : {Flavor::A, Flavor::X}) {
      const std::vector<RationalFunction> b = fl == Flavor::A ? basis : g2_x_basis();
      const std::string side = fl == Flavor::A ? "(F1, F2)" : "the X-side basis";
      out.push_back(check("tau acts on " + side + " by [[1,1],[0,-1]]",
                          [&] { return monomial_rep(q, {g2_tau()}, b, fl)[0] == tau; }));
      // {414,(132)} exchanges F1 and F2; the order-6 matrix comes from tau r.
      out.push_back(check("r swaps " + side, [&] { return monomial_rep(q, {g2_r()}, b, fl)[0] == swap; }));
      out.push_back(check("tau r acts on " + side + " by [[1,1],[-1,0]]",
                          [&] { return monomial_rep(q, {tr}, b, fl)[0] == rot; }));
    }
    out.push_back(check("F2 at a3 = a4 = 1", [&] {
      return evaluate_frozen_at_one(basis[1], {0, 1}) ==
             parse_function("((a1 + a2)^2 + 1)/(a1*a2)", indexed_names("a", 2));
    }));
    out.push_back(check("two isomorphism classes", [&] { return mutation_class(q, 64).size() == 2; }));
  } else if (name == "g2_affine") {
    out.push_back(check("mutation at node 2", [&] {
      return q.mutate(1).matrix() == Matrix{{0, -3, 3}, {1, 0, -1}, {-1, 1, 0}};
    }));
  } else if (name == "d4_11(Q4)") {
    const RationalFunction f = fa("(a1*a4 + a2*a5 + a3*a6)^2/(a1*a2*a3*a4*a5*a6)");
    out.push_back(check("exchange class of F has 24 functions", [&] {
      return exchange_class(q, f, d4_q4_generators(), 200, Flavor::A).size() == 24;
    }));
    const std::vector<std::vector<std::size_t>> blocks{{0, 3}, {1, 4}, {2, 5}};
    const RationalFunction mf = parse_function("(a1^2 + a2^2 + a3^2)/(a1*a2*a3)", indexed_names("a", 3));
    out.push_back(check("folding F gives the Markov F squared", [&] { return fold_check(f, blocks) == mf.pow(2); }));
    out.push_back(check("folding F456 gives the Markov F",
                        [&] { return fold_check(fa("(a1*a4 + a2*a5 + a3*a6)/(a4*a5*a6)"), blocks) == mf; }));
    out.push_back(check("folding a1/a4 gives 1", [&] { return fold_check(fa("a1/a4"), blocks) == RationalFunction(3, 1); }));
    out.push_back(check("denominator vectors correspond", [&] {
      auto [a, x] = d4_correspondence_basis();
      return denominator_correspondence(a, x);
    }));
    out.push_back(check("four isomorphism classes", [&] { return mutation_class(q, 64).size() == 4; }));
  } else if (name == "a_n(3)") {
    const GroupElement g = a3_path_generator();
    out.push_back(check("{123,()} has order 6", [&] { return order(q, g, 12) == std::optional<std::size_t>(6); }));
    out.push_back(check("{123,()} inverts x1 x3", [&] {
      const RationalFunction gx = fx("x1*x3");
      return act(q, g, gx, Flavor::X) == gx.inverse();
    }));
    out.push_back(check("x1 x3 spans the Casimirs", [&] {
      auto c = casimirs(q);
      return c.size() == 1 && c[0] == fx("x1*x3");
    }));
  } else if (name.rfind("t_pqr(", 0) == 0) {
    out.push_back(check("sqrtG^2 = rho*(G)", [&] {
      return invariant(name, "sqrtG").function.pow(2) == rho_pullback(q, invariant(name, "G").function);
    }));
    out.push_back(check("X basis at x_i = 0 off A1, A2 lands in R(G)", [&] {
      std::vector<std::size_t> removed;
      for (std::size_t i = 2; i < q.size(); ++i) removed.push_back(i);
      const Quiver small = t_pqr(1, 1, 1);
      const RationalFunction g = parse_function("(x2*(x1 + 1) + 1)^2/(x1*x2)", indexed_names("x", 2));
      for (const auto& r : invariants(name)) {
        if (r.flavor != Flavor::X) continue;
        RationalFunction z = evaluate_x_at_zero(r.function, removed);
        if (!(z.is_zero() || z == g)) return false;
        if (!verify_invariant(small, z, {t_pqr_gamma(2)}, Flavor::X)) return false;
      }
      return true;
    }));
  }
  return out;
}

}  // namespace cluster::catalog
