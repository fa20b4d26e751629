#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "cluster/arith/text.hpp"
#include "cluster/ensemble/seed.hpp"
#include "cluster/modular/group_element.hpp"

// JSON forms use 1-based node labels throughout, matching the text syntax.

namespace cluster::io {

using nlohmann::json;

inline json quiver_to_json(const Quiver& q) {
  json frozen = json::array();
  for (std::size_t f : q.frozen_nodes()) frozen.push_back(f + 1);
  return {{"n", q.size()}, {"frozen", frozen}, {"matrix", q.matrix()}, {"multipliers", q.multipliers()}};
}

namespace detail {

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("field \"") + key + "\" has the wrong type");
  }
}

}  // namespace detail

inline Quiver quiver_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("quiver must be a JSON object");
  const auto matrix = detail::field<Matrix>(j, "matrix");
  if (j.contains("n") && detail::field<std::size_t>(j, "n") != matrix.size())
    throw ParseError("\"n\" does not match the matrix size");
  std::vector<int64_t> d;
  if (j.contains("multipliers")) d = detail::field<std::vector<int64_t>>(j, "multipliers");
  std::vector<std::size_t> frozen;
  if (j.contains("frozen"))
    for (long f : detail::field<std::vector<long>>(j, "frozen")) {
      if (f < 1 || static_cast<std::size_t>(f) > matrix.size()) throw ParseError("frozen node out of range");
      frozen.push_back(static_cast<std::size_t>(f - 1));
    }
  for (const auto& row : matrix)
    if (row.size() != matrix.size()) throw ParseError("matrix is not square");
  try {
    return Quiver(matrix, d, frozen);
  } catch (const InvalidQuiver& e) {
    throw ParseError(e.what());
  }
}

inline Quiver quiver_from_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return quiver_from_json(j);
}

inline json renderings(const std::vector<RationalFunction>& fs, const VariableNames& names) {
  json out = json::array();
  for (const auto& f : fs) out.push_back(render(f, names));
  return out;
}

/// Quiver fields plus rendered variables.
inline json seed_to_json(const ASeed& s, const VariableNames& names) {
  json j = quiver_to_json(s.quiver);
  j["vars"] = renderings(s.vars, names);
  return j;
}

inline json seed_to_json(const XSeed& s, const VariableNames& names) {
  json j = quiver_to_json(s.quiver);
  j["vars"] = renderings(s.vars, names);
  return j;
}

inline json element_to_json(const GroupElement& g) {
  json path = json::array();
  for (std::size_t k : g.path) path.push_back(k + 1);
  json perm = json::array();
  for (std::size_t k : g.perm) perm.push_back(k + 1);
  return {{"path", path}, {"perm", perm}};
}

inline GroupElement element_from_json(const json& j, std::size_t n) {
  if (j.is_string()) return parse_group_element(j.get<std::string>(), n);
  if (!j.is_object()) throw ParseError("group element must be an object or a string");
  GroupElement g;
  for (long k : detail::field<std::vector<long>>(j, "path")) {
    if (k < 1 || static_cast<std::size_t>(k) > n) throw ParseError("path node out of range");
    g.path.push_back(static_cast<std::size_t>(k - 1));
  }
  if (j.contains("perm")) {
    for (long k : detail::field<std::vector<long>>(j, "perm")) {
      if (k < 1 || static_cast<std::size_t>(k) > n) throw ParseError("perm entry out of range");
      g.perm.push_back(static_cast<std::size_t>(k - 1));
    }
  } else {
    g.perm = identity_bijection(n);
  }
  if (g.perm.size() != n || !is_permutation(g.perm)) throw ParseError("perm is not a permutation of the nodes");
  return g;
}

/// "2", "1 1", "1231", "" or "1,2": node labels as a 0-based path.
inline MutationPath parse_path(const std::string& text, std::size_t n) {
  std::string t = text;
  for (char& c : t)
    if (c == ',') c = ' ';
  t = cluster::detail::trim_copy(t);
  if (t.empty() || t == "<>") return {};
  return cluster::detail::parse_labels(t, n, text);
}

}  // namespace cluster::io
