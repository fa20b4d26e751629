#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cluster/quiver/mutation_class.hpp"
#include "cluster/quiver/quiver.hpp"

namespace cluster {

/// The pair {P, sigma}: a mutation path and a node map sigma from the base
/// quiver to P(base) with eps'(sigma i, sigma j) = eps(i, j). The same data
/// describes a groupoid arrow when sigma starts at a different quiver.
struct GroupElement {
  MutationPath path;
  NodeBijection perm;

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.path == b.path && a.perm == b.perm;
  }
};

inline GroupElement identity_element(std::size_t n) { return {{}, identity_bijection(n)}; }

/// The product g1 g2, acting as g1 after g2 on functions.
inline GroupElement compose(const GroupElement& g1, const GroupElement& g2) {
  if (g1.perm.size() != g2.perm.size()) throw BaseMismatch("group elements act on different node counts");
  GroupElement r;
  r.path = g1.path;
  for (std::size_t k : g2.path) r.path.push_back(g1.perm[k]);
  r.perm = compose(g1.perm, g2.perm);
  return r;
}

inline GroupElement inverse(const GroupElement& g) {
  GroupElement r;
  r.perm = inverse(g.perm);
  for (auto it = g.path.rbegin(); it != g.path.rend(); ++it) r.path.push_back(r.perm[*it]);
  return r;
}

inline GroupElement power(const GroupElement& g, std::size_t k) {
  GroupElement r = identity_element(g.perm.size());
  for (std::size_t i = 0; i < k; ++i) r = compose(r, g);
  return r;
}

/// h^-1 g h. If h mutates from Q along its path and its permutation starts
/// at Q', an element g based at Q becomes one based at Q'.
inline GroupElement conjugate(const GroupElement& g, const GroupElement& h) {
  return compose(inverse(h), compose(g, h));
}

/// True iff the path is legal at q and perm carries q onto path(q).
inline bool is_element(const Quiver& q, const GroupElement& g) {
  if (g.perm.size() != q.size()) return false;
  Quiver p = q;
  for (std::size_t k : g.path) {
    if (k >= q.size() || p.is_frozen(k)) return false;
    p = p.mutate(k);
  }
  return is_isomorphism(q, p, g.perm);
}

inline void check_element(const Quiver& q, const GroupElement& g) {
  if (g.perm.size() != q.size()) throw BaseMismatch("group element has the wrong node count");
  if (!is_element(q, g)) throw BaseMismatch("permutation is not an isomorphism onto the mutated quiver");
}

namespace detail {

inline std::vector<std::size_t> parse_labels(std::string_view text, std::size_t n, std::string_view whole) {
  std::vector<std::size_t> out;
  auto bad = [&](const std::string& why) { return ParseError(why + " in group element \"" + std::string(whole) + "\""); };
  auto push = [&](long v) {
    if (v < 1 || static_cast<std::size_t>(v) > n) throw bad("node " + std::to_string(v) + " out of range");
    out.push_back(static_cast<std::size_t>(v - 1));
  };
  const bool spaced = text.find_first_of(" \t") != std::string_view::npos;
  if (spaced) {
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) {
      for (char c : tok)
        if (!std::isdigit(static_cast<unsigned char>(c))) throw bad("unexpected character '" + std::string(1, c) + "'");
      if (tok.size() > 6) throw bad("node label too long");
      push(std::stol(tok));
    }
  } else {
    for (char c : text) {
      if (!std::isdigit(static_cast<unsigned char>(c))) throw bad("unexpected character '" + std::string(1, c) + "'");
      push(c - '0');
    }
  }
  return out;
}

inline std::string trim_copy(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace detail

/// Parses "{1231,(23)}", "{<>,(123)}" or "{1,()}". Node labels are single
/// digits unless separated by spaces, as in "{10 2,(1 10)(2 3)}".
inline GroupElement parse_group_element(std::string_view text, std::size_t n) {
  const std::string s = detail::trim_copy(text);
  if (s.size() < 2 || s.front() != '{' || s.back() != '}') throw ParseError("group element must be written {path,perm}: \"" + s + "\"");
  const std::string body = s.substr(1, s.size() - 2);
  const std::size_t comma = body.find(',');
  if (comma == std::string::npos) throw ParseError("group element needs a comma: \"" + s + "\"");
  GroupElement g;
  const std::string path = detail::trim_copy(std::string_view(body).substr(0, comma));
  if (path != "<>" && !path.empty()) g.path = detail::parse_labels(path, n, s);
  g.perm = identity_bijection(n);
  std::string perm = detail::trim_copy(std::string_view(body).substr(comma + 1));
  if (perm == "e") perm.clear();
  std::vector<bool> moved(n, false);
  std::size_t pos = 0;
  while (pos < perm.size()) {
    if (std::isspace(static_cast<unsigned char>(perm[pos]))) {
      ++pos;
      continue;
    }
    if (perm[pos] != '(') throw ParseError("expected '(' in permutation of \"" + s + "\"");
    const std::size_t close = perm.find(')', pos);
    if (close == std::string::npos) throw ParseError("unclosed cycle in \"" + s + "\"");
    std::vector<std::size_t> cycle = detail::parse_labels(perm.substr(pos + 1, close - pos - 1), n, s);
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (moved[cycle[i]]) throw ParseError("node repeated in permutation of \"" + s + "\"");
      moved[cycle[i]] = true;
      g.perm[cycle[i]] = cycle[(i + 1) % cycle.size()];
    }
    pos = close + 1;
  }
  return g;
}

/// Inverse of parse_group_element; fixed points are omitted from the cycles.
inline std::string format_group_element(const GroupElement& g) {
  const std::size_t n = g.perm.size();
  const bool spaced = n > 9;
  auto label = [](std::size_t v) { return std::to_string(v + 1); };
  std::string out = "{";
  if (g.path.empty()) {
    out += "<>";
  } else {
    for (std::size_t i = 0; i < g.path.size(); ++i) {
      if (spaced && i > 0) out += ' ';
      out += label(g.path[i]);
    }
  }
  out += ',';
  std::vector<bool> done(n, false);
  bool any = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (done[i] || g.perm[i] == i) continue;
    any = true;
    out += '(';
    std::size_t j = i;
    bool first = true;
    while (!done[j]) {
      if (spaced && !first) out += ' ';
      out += label(j);
      done[j] = true;
      first = false;
      j = g.perm[j];
    }
    out += ')';
  }
  if (!any) out += "()";
  out += '}';
  return out;
}

}  // namespace cluster
