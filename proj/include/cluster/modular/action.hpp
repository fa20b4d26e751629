#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cluster/arith.hpp"
#include "cluster/ensemble/seed.hpp"
#include "cluster/modular/group_element.hpp"

namespace cluster {

/// Images of the base variables under g: variable i goes to the variable at
/// node perm[i] of the seed reached along the path. act(g, f) substitutes
/// these into f.
inline std::vector<RationalFunction> action_images(const Quiver& q, const GroupElement& g, Flavor flavor) {
  check_element(q, g);
  std::vector<RationalFunction> images;
  if (flavor == Flavor::A) {
    ASeed s = apply_path(initial_a_seed(q), g.path);
    for (std::size_t i = 0; i < q.size(); ++i) images.push_back(s.vars[g.perm[i]]);
  } else {
    XSeed s = apply_path(initial_x_seed(q), g.path);
    for (std::size_t i : q.mutable_nodes()) images.push_back(s.vars[x_slot(s.quiver, g.perm[i])]);
  }
  return images;
}

inline std::size_t ring_size(const Quiver& q, Flavor flavor) {
  return flavor == Flavor::A ? q.size() : q.mutable_nodes().size();
}

inline void check_ring(const Quiver& q, const RationalFunction& f, Flavor flavor) {
  if (f.nvars() != ring_size(q, flavor))
    throw RingMismatch(std::string("function does not live on the ") + flavor_name(flavor) + " side of this quiver");
}

inline RationalFunction act(const Quiver& q, const GroupElement& g, const RationalFunction& f, Flavor flavor) {
  check_ring(q, f, flavor);
  return substitute(f, action_images(q, g, flavor));
}

namespace detail {

/// Mutates a numeric seed mod p along the path. Absent if some exchange
/// divides by zero.
inline std::optional<std::vector<uint64_t>> path_mod(Quiver q, std::vector<uint64_t> v, const MutationPath& path,
                                                     Flavor flavor, const ModP& f) {
  for (std::size_t k : path) {
    q.check_mutable(k);
    if (flavor == Flavor::A) {
      if (v[k] == 0) return std::nullopt;
      uint64_t in = 1;
      uint64_t out = 1;
      for (std::size_t j = 0; j < q.size(); ++j) {
        const int64_t e = q(k, j);
        if (e < 0) in = f.mul(in, f.pow(v[j], static_cast<uint64_t>(-e)));
        if (e > 0) out = f.mul(out, f.pow(v[j], static_cast<uint64_t>(e)));
      }
      v[k] = f.mul(f.add(in, out), f.inv(v[k]));
    } else {
      const uint64_t xk = v[x_slot(q, k)];
      if (xk == 0) return std::nullopt;
      const uint64_t up = f.add(1, xk);
      const uint64_t down = f.add(1, f.inv(xk));
      std::size_t slot = 0;
      for (std::size_t j : q.mutable_nodes()) {
        const int64_t e = q(j, k);
        if (j == k) {
          v[slot] = f.inv(xk);
        } else if (e != 0) {
          const uint64_t base = e > 0 ? down : up;
          if (base == 0) return std::nullopt;
          const uint64_t p = f.pow(base, static_cast<uint64_t>(e > 0 ? e : -e));
          v[slot] = e > 0 ? f.mul(v[slot], f.inv(p)) : f.mul(v[slot], p);
        }
        ++slot;
      }
    }
    q = q.mutate(k);
  }
  return v;
}

/// Numeric images of a random point under g, with the point itself.
struct ModImage {
  std::vector<uint64_t> point;
  std::vector<uint64_t> images;
};

inline std::optional<ModImage> images_mod(const Quiver& q, const GroupElement& g, Flavor flavor, std::mt19937_64& rng,
                                          const ModP& f) {
  const std::size_t m = ring_size(q, flavor);
  std::uniform_int_distribution<uint64_t> dist(2, f.p - 1);
  for (int attempt = 0; attempt < 8; ++attempt) {
    ModImage r;
    for (std::size_t i = 0; i < m; ++i) r.point.push_back(dist(rng));
    auto end = path_mod(q, r.point, g.path, flavor, f);
    if (!end) continue;
    const Quiver p = q.mutate(g.path);
    if (flavor == Flavor::A) {
      for (std::size_t i = 0; i < q.size(); ++i) r.images.push_back((*end)[g.perm[i]]);
    } else {
      for (std::size_t i : q.mutable_nodes()) r.images.push_back((*end)[x_slot(p, g.perm[i])]);
    }
    return r;
  }
  return std::nullopt;
}

/// False when a random evaluation mod p shows act(g, f) != f. True means
/// "possibly equal"; symbolic confirmation is still required.
inline bool screen_fixed(const Quiver& q, const GroupElement& g, const RationalFunction& f, Flavor flavor,
                         std::mt19937_64& rng) {
  const ModP field{detail::kGcdPrime};
  for (int attempt = 0; attempt < 4; ++attempt) {
    auto im = images_mod(q, g, flavor, rng, field);
    if (!im) continue;
    auto before = evaluate_mod(f, im->point, field);
    auto after = evaluate_mod(f, im->images, field);
    if (!before || !after) continue;
    return *before == *after;
  }
  return true;
}

}  // namespace detail

/// True iff g fixes every initial X coordinate.
inline bool is_trivial(const Quiver& q, const GroupElement& g) {
  check_element(q, g);
  const std::size_t m = ring_size(q, Flavor::X);
  if (m == 0) return true;
  std::mt19937_64 rng(0x5eed);
  const ModP field{detail::kGcdPrime};
  for (int attempt = 0; attempt < 4; ++attempt) {
    auto im = detail::images_mod(q, g, Flavor::X, rng, field);
    if (!im) continue;
    if (im->images != im->point) return false;
    break;
  }
  const std::vector<RationalFunction> images = action_images(q, g, Flavor::X);
  for (std::size_t i = 0; i < m; ++i)
    if (!(images[i] == RationalFunction::variable(m, i))) return false;
  return true;
}

/// Least k <= bound with g^k trivial.
inline std::optional<std::size_t> order(const Quiver& q, const GroupElement& g, std::size_t bound) {
  check_element(q, g);
  GroupElement p = g;
  for (std::size_t k = 1; k <= bound; ++k) {
    if (is_trivial(q, p)) return k;
    p = compose(p, g);
  }
  return std::nullopt;
}

/// One flag per generator: act(g, f) == f.
inline std::vector<bool> invariance_report(const Quiver& q, const RationalFunction& f,
                                           const std::vector<GroupElement>& generators, Flavor flavor) {
  check_ring(q, f, flavor);
  std::mt19937_64 rng(0xfeed);
  std::vector<bool> out;
  for (const auto& g : generators) {
    check_element(q, g);
    if (!detail::screen_fixed(q, g, f, flavor, rng)) {
      out.push_back(false);
      continue;
    }
    out.push_back(act(q, g, f, flavor) == f);
  }
  return out;
}

inline bool verify_invariant(const Quiver& q, const RationalFunction& f, const std::vector<GroupElement>& generators,
                             Flavor flavor) {
  for (bool ok : invariance_report(q, f, generators, flavor))
    if (!ok) return false;
  return true;
}

/// Orbit of f under the generated group, in discovery order. Throws when the
/// orbit exceeds max_size.
inline std::vector<RationalFunction> exchange_class(const Quiver& q, const RationalFunction& f,
                                                    const std::vector<GroupElement>& generators, std::size_t max_size,
                                                    Flavor flavor) {
  check_ring(q, f, flavor);
  std::vector<std::vector<RationalFunction>> images;
  for (const auto& g : generators) images.push_back(action_images(q, g, flavor));
  const VariableNames names = indexed_names("v", f.nvars());
  std::map<std::string, std::size_t> seen{{render(f, names), 0}};
  std::vector<RationalFunction> orbit{f};
  for (std::size_t next = 0; next < orbit.size(); ++next) {
    for (const auto& im : images) {
      RationalFunction h = substitute(orbit[next], im);
      if (!seen.emplace(render(h, names), orbit.size()).second) continue;
      if (orbit.size() >= max_size)
        throw BoundExceeded("exchange class has more than " + std::to_string(max_size) + " functions");
      orbit.push_back(std::move(h));
    }
  }
  return orbit;
}

/// A named function with the generators it is invariant under.
struct InvariantRecord {
  std::string name;
  Quiver quiver;
  RationalFunction function;
  Flavor flavor = Flavor::A;
  std::vector<GroupElement> generators;
  VariableNames names;
  std::optional<ExponentVector> denominator;
  std::string note;
};

/// Builds a record after checking invariance under every generator.
inline InvariantRecord make_invariant(std::string name, const Quiver& q, const RationalFunction& f, Flavor flavor,
                                      std::vector<GroupElement> generators, VariableNames names, std::string note = {}) {
  if (!verify_invariant(q, f, generators, flavor)) throw Error(name + " is not invariant under its generators");
  InvariantRecord r{std::move(name), q, f, flavor, std::move(generators), std::move(names), std::nullopt, std::move(note)};
  if (f.is_laurent() && !f.is_zero()) r.denominator = f.denominator_vector();
  return r;
}

}  // namespace cluster
