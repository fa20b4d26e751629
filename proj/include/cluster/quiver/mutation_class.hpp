#pragma once

#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "cluster/quiver/isomorphism.hpp"
#include "cluster/quiver/quiver.hpp"

namespace cluster {

using MutationPath = std::vector<std::size_t>;

/// One isomorphism class of a mutation class: the quiver reached from the
/// start by `path`.
struct ClassMember {
  Quiver quiver;
  MutationPath path;
};

/// Breadth-first enumeration of isomorphism classes reachable by mutation.
/// Members appear in discovery order; the first is the start itself.
inline std::vector<ClassMember> mutation_class(const Quiver& q, std::size_t max_size) {
  std::vector<ClassMember> members;
  std::map<std::vector<int64_t>, std::size_t> seen;
  members.push_back({q, {}});
  seen.emplace(canonical_form(q).code, 0);
  const std::vector<std::size_t> nodes = q.mutable_nodes();
  for (std::size_t next = 0; next < members.size(); ++next) {
    for (std::size_t k : nodes) {
      Quiver m = members[next].quiver.mutate(k);
      auto [it, inserted] = seen.emplace(canonical_form(m).code, members.size());
      if (!inserted) continue;
      if (members.size() >= max_size)
        throw BoundExceeded("mutation class has more than " + std::to_string(max_size) + " isomorphism classes");
      MutationPath path = members[next].path;
      path.push_back(k);
      members.push_back({std::move(m), std::move(path)});
    }
  }
  return members;
}

/// A path P with P(from) isomorphic to `to`, and sigma: to -> P(from).
struct PathWitness {
  MutationPath path;
  NodeBijection sigma;
};

inline PathWitness find_path(const Quiver& from, const Quiver& to, std::size_t max_size) {
  if (from.size() != to.size()) throw BoundExceeded("no mutation path: node counts differ");
  std::map<std::vector<int64_t>, bool> seen;
  std::deque<ClassMember> queue{{from, {}}};
  seen.emplace(canonical_form(from).code, true);
  while (!queue.empty()) {
    ClassMember cur = std::move(queue.front());
    queue.pop_front();
    if (auto sigma = is_isomorphic(to, cur.quiver)) return {cur.path, *sigma};
    for (std::size_t k : cur.quiver.mutable_nodes()) {
      Quiver m = cur.quiver.mutate(k);
      if (!seen.emplace(canonical_form(m).code, true).second) continue;
      if (seen.size() > max_size) throw BoundExceeded("no mutation path within " + std::to_string(max_size) + " classes");
      MutationPath path = cur.path;
      path.push_back(k);
      queue.push_back({std::move(m), std::move(path)});
    }
  }
  throw BoundExceeded("target is not in the mutation class");
}

}  // namespace cluster
