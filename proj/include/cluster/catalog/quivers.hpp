#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "cluster/arith/text.hpp"
#include "cluster/ensemble/seed.hpp"
#include "cluster/quiver/quiver.hpp"

namespace cluster::catalog {

/// Directed path 1 -> 2 -> ... -> k.
inline Quiver a_n(std::size_t k) {
  if (k < 1) throw CatalogError("a_n needs at least one node");
  Matrix m(k, std::vector<int64_t>(k, 0));
  for (std::size_t i = 0; i + 1 < k; ++i) {
    m[i][i + 1] = 1;
    m[i + 1][i] = -1;
  }
  return Quiver(m);
}

inline Quiver a2() { return a_n(2); }

/// Directed n-cycle 1 -> 2 -> ... -> n -> 1.
inline Quiver d_cycle(std::size_t n) {
  if (n < 3) throw CatalogError("d_cycle needs n >= 3");
  Matrix m(n, std::vector<int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][(i + 1) % n] = 1;
    m[(i + 1) % n][i] = -1;
  }
  return Quiver(m);
}

inline Quiver a3_cycle() { return d_cycle(3); }

inline Quiver a1_affine() { return Quiver({{0, 2}, {-2, 0}}); }

inline Quiver markov() { return Quiver({{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}}); }

inline Quiver bc21() { return Quiver({{0, 1, -1}, {-4, 0, 2}, {4, -2, 0}}, {4, 1, 1}); }

inline Quiver bc24() { return Quiver({{0, 4, -4}, {-1, 0, 2}, {1, -2, 0}}, {1, 4, 4}); }

inline Quiver somos4() {
  return Quiver({{0, -1, 2, -1}, {1, 0, -3, 2}, {-2, 3, 0, -1}, {1, -2, 1, 0}});
}

inline Quiver somos5() {
  return Quiver({{0, -1, 1, 1, -1},
                 {1, 0, -2, 0, 1},
                 {-1, 2, 0, -2, 1},
                 {-1, 0, 2, 0, -1},
                 {1, -1, -1, 1, 0}});
}

inline Quiver somos6() {
  return Quiver({{0, 1, 0, -2, 0, 1},
                 {-1, 0, 1, 2, -2, 0},
                 {0, -1, 0, 1, 2, -2},
                 {2, -2, -1, 0, 1, 0},
                 {0, 2, -2, -1, 0, 1},
                 {-1, 0, 2, 0, -1, 0}});
}

inline Quiver g2_33() {
  return Quiver({{0, 2, -1, -1}, {-2, 0, 1, 1}, {1, -1, 0, 0}, {3, -3, 0, 0}}, {3, 3, 3, 1});
}

inline Quiver g2_affine() { return Quiver({{0, 3, 0}, {-1, 0, 1}, {0, -1, 0}}, {1, 3, 3}); }

namespace detail {

inline Quiver from_arrows(std::size_t n, const std::vector<std::pair<int, int>>& arrows) {
  Matrix m(n, std::vector<int64_t>(n, 0));
  for (auto [i, j] : arrows) {
    m[i - 1][j - 1] += 1;
    m[j - 1][i - 1] -= 1;
  }
  return Quiver(m);
}

}  // namespace detail

/// The four isomorphism classes Q1..Q4 of the D4^(1,1) mutation class.
inline Quiver d4_11(int which) {
  const Quiver q1 = detail::from_arrows(6, {{1, 2}, {1, 3}, {1, 5}, {1, 6}, {2, 4}, {3, 4}, {5, 4}, {6, 4}, {4, 1}, {4, 1}});
  switch (which) {
    case 1:
      return q1;
    case 2:
      return q1.mutate(1);
    case 3:
      return q1.mutate(1).mutate(4);
    case 4:
      return detail::from_arrows(6, {{1, 2}, {1, 5}, {6, 4}, {6, 1}, {2, 3}, {2, 6}, {5, 6}, {5, 3}, {3, 4}, {3, 1}, {4, 2}, {4, 5}});
    default:
      throw CatalogError("d4_11 has classes Q1..Q4");
  }
}

/// Nodes A1, A2, B2..Bp, C2..Cq, D2..Dr.
inline Quiver t_pqr(std::size_t p, std::size_t q, std::size_t r) {
  if (p < 1 || q < 1 || r < 1) throw CatalogError("t_pqr needs p, q, r >= 1");
  const std::size_t n = p + q + r - 1;
  Matrix m(n, std::vector<int64_t>(n, 0));
  auto arrow = [&](std::size_t i, std::size_t j, int64_t w) {
    m[i][j] += w;
    m[j][i] -= w;
  };
  arrow(0, 1, 2);
  std::size_t next = 2;
  for (std::size_t len : {p, q, r}) {
    for (std::size_t k = 0; k + 1 < len; ++k) {
      const std::size_t node = next + k;
      if (k == 0) {
        arrow(node, 0, 1);
        arrow(1, node, 1);
      } else {
        arrow(node, node - 1, 1);
      }
    }
    next += len - 1;
  }
  return Quiver(m);
}

/// Variable names a1, a2, b2.., c2.., d2.. and x1, x2, y2.., z2.., w2...
inline std::pair<VariableNames, VariableNames> t_pqr_names(std::size_t p, std::size_t q, std::size_t r) {
  VariableNames a{"a1", "a2"};
  VariableNames x{"x1", "x2"};
  const char* an[] = {"b", "c", "d"};
  const char* xn[] = {"y", "z", "w"};
  const std::size_t lens[] = {p, q, r};
  for (int leg = 0; leg < 3; ++leg)
    for (std::size_t k = 2; k <= lens[leg]; ++k) {
      a.push_back(an[leg] + std::to_string(k));
      x.push_back(xn[leg] + std::to_string(k));
    }
  return {a, x};
}

/// A catalog quiver with its variable names.
struct Entry {
  std::string name;
  Quiver quiver;
  VariableNames a_names;
  VariableNames x_names;
  std::string description;
};

namespace detail {

inline std::vector<std::size_t> parse_args(std::string_view name, std::string_view prefix) {
  std::string_view rest = name.substr(prefix.size());
  if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')') throw CatalogError("malformed catalog name: " + std::string(name));
  rest = rest.substr(1, rest.size() - 2);
  std::vector<std::size_t> out;
  while (true) {
    const std::size_t comma = rest.find(',');
    std::string_view tok = rest.substr(0, comma);
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty())
      throw CatalogError("malformed catalog name: " + std::string(name));
    if (v > 64) throw CatalogError("catalog parameter too large: " + std::string(name));
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

inline Entry plain(std::string name, Quiver q, std::string description) {
  Entry e{std::move(name), q, a_names(q), x_names(q), std::move(description)};
  return e;
}

}  // namespace detail

/// Names accepted by build(); parameterized families are listed with the
/// instances the invariant suite covers.
inline std::vector<std::string> names() {
  return {"a2",          "a_n(3)",       "a3_cycle",     "a1_affine",    "markov",       "bc21",
          "bc24",        "somos4",       "somos5",       "somos6",       "d_cycle(3)",   "d_cycle(4)",
          "d_cycle(5)",  "d_cycle(6)",   "g2_33",        "g2_affine",    "d4_11(Q1)",    "d4_11(Q2)",
          "d4_11(Q3)",   "d4_11(Q4)",    "t_pqr(1,1,1)", "t_pqr(2,1,1)", "t_pqr(2,2,1)", "t_pqr(2,2,2)",
          "t_pqr(3,3,2)"};
}

inline Entry build(const std::string& name) {
  using detail::plain;
  if (name == "a2") return plain(name, a2(), "A2: 1 -> 2");
  if (name == "a3_cycle") return plain(name, a3_cycle(), "A3 as an oriented 3-cycle");
  if (name == "a1_affine") return plain(name, a1_affine(), "affine A1: 1 => 2");
  if (name == "markov") return plain(name, markov(), "Markov quiver, double arrows around a 3-cycle");
  if (name == "bc21") return plain(name, bc21(), "BC1^(2,1)");
  if (name == "bc24") return plain(name, bc24(), "BC1^(2,4)");
  if (name == "somos4") return plain(name, somos4(), "Somos-4 quiver");
  if (name == "somos5") return plain(name, somos5(), "Somos-5 quiver");
  if (name == "somos6") return plain(name, somos6(), "Somos-6 quiver");
  if (name == "g2_33") return plain(name, g2_33(), "G2^(3,3)");
  if (name == "g2_affine") return plain(name, g2_affine(), "affine G2 with D = diag(1,3,3)");
  if (name.rfind("a_n(", 0) == 0) {
    auto a = detail::parse_args(name, "a_n");
    if (a.size() != 1) throw CatalogError("a_n takes one parameter");
    return plain(name, a_n(a[0]), "A" + std::to_string(a[0]) + " as a directed path");
  }
  if (name.rfind("d_cycle(", 0) == 0) {
    auto a = detail::parse_args(name, "d_cycle");
    if (a.size() != 1) throw CatalogError("d_cycle takes one parameter");
    return plain(name, d_cycle(a[0]), "directed " + std::to_string(a[0]) + "-cycle of type D");
  }
  if (name.rfind("d4_11(", 0) == 0) {
    if (name.size() != 9 || name[6] != 'Q' || name[7] < '1' || name[7] > '4' || name[8] != ')')
      throw CatalogError("d4_11 takes Q1..Q4");
    return plain(name, d4_11(name[7] - '0'), "D4^(1,1) class Q" + std::string(1, name[7]));
  }
  if (name.rfind("t_pqr(", 0) == 0) {
    auto a = detail::parse_args(name, "t_pqr");
    if (a.size() != 3) throw CatalogError("t_pqr takes three parameters");
    auto [an, xn] = t_pqr_names(a[0], a[1], a[2]);
    return {name, t_pqr(a[0], a[1], a[2]), an, xn, "three-legged T_{p,q,r} quiver"};
  }
  throw CatalogError("unknown catalog entry: " + name);
}

}  // namespace cluster::catalog
