#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cluster/error.hpp"

namespace cluster {

using Matrix = std::vector<std::vector<int64_t>>;

/// Node map i -> perm[i].
using NodeBijection = std::vector<std::size_t>;

/// Skew-symmetrizable quiver: eps(i, j) counts arrows i -> j (negative for
/// arrows j -> i), d(i) is the node multiplier, and frozen nodes are never
/// mutated. Nodes are 0-based.
class Quiver {
 public:
  Quiver() = default;

  explicit Quiver(const Matrix& eps, std::vector<int64_t> multipliers = {}, const std::vector<std::size_t>& frozen = {})
      : n_(eps.size()), eps_(n_ * n_), d_(std::move(multipliers)), frozen_(n_, false) {
    for (std::size_t i = 0; i < n_; ++i) {
      if (eps[i].size() != n_) throw InvalidQuiver("exchange matrix is not square");
      for (std::size_t j = 0; j < n_; ++j) eps_[i * n_ + j] = eps[i][j];
    }
    if (d_.empty()) d_.assign(n_, 1);
    if (d_.size() != n_) throw InvalidQuiver("one multiplier per node required");
    for (std::size_t f : frozen) {
      if (f >= n_) throw InvalidQuiver("frozen node out of range");
      frozen_[f] = true;
    }
    validate();
  }

  std::size_t size() const { return n_; }
  int64_t operator()(std::size_t i, std::size_t j) const { return eps_[i * n_ + j]; }
  int64_t multiplier(std::size_t i) const { return d_[i]; }
  const std::vector<int64_t>& multipliers() const { return d_; }
  bool is_frozen(std::size_t i) const { return frozen_[i]; }

  std::vector<std::size_t> frozen_nodes() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n_; ++i)
      if (frozen_[i]) out.push_back(i);
    return out;
  }

  std::vector<std::size_t> mutable_nodes() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n_; ++i)
      if (!frozen_[i]) out.push_back(i);
    return out;
  }

  Matrix matrix() const {
    Matrix m(n_, std::vector<int64_t>(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) m[i][j] = (*this)(i, j);
    return m;
  }

  void check_mutable(std::size_t k) const {
    if (k >= n_) throw IllegalMutation("node " + std::to_string(k + 1) + " does not exist");
    if (frozen_[k]) throw IllegalMutation("node " + std::to_string(k + 1) + " is frozen");
  }

  /// Matrix mutation at k.
  Quiver mutate(std::size_t k) const {
    check_mutable(k);
    Quiver q = *this;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        int64_t& e = q.eps_[i * n_ + j];
        if (i == k || j == k) {
          e = -e;
          continue;
        }
        const int64_t ik = (*this)(i, k);
        const int64_t kj = (*this)(k, j);
        int64_t prod = 0;
        if (__builtin_mul_overflow(ik, kj, &prod)) throw BoundExceeded("exchange matrix entry overflow");
        if (prod <= 0) continue;
        if (__builtin_add_overflow(e, ik > 0 ? prod : -prod, &e)) throw BoundExceeded("exchange matrix entry overflow");
      }
    }
    return q;
  }

  /// Mutation along a node sequence, left to right.
  Quiver mutate(const std::vector<std::size_t>& path) const {
    Quiver q = *this;
    for (std::size_t k : path) q = q.mutate(k);
    return q;
  }

  /// Relabels node i as s[i].
  Quiver permuted(const NodeBijection& s) const {
    if (s.size() != n_) throw InvalidQuiver("permutation size does not match node count");
    Quiver q = *this;
    for (std::size_t i = 0; i < n_; ++i) {
      q.d_[s[i]] = d_[i];
      q.frozen_[s[i]] = frozen_[i];
      for (std::size_t j = 0; j < n_; ++j) q.eps_[s[i] * n_ + s[j]] = (*this)(i, j);
    }
    return q;
  }

  /// Same exchange matrix with the given nodes additionally frozen.
  Quiver with_frozen(const std::vector<std::size_t>& nodes) const {
    Quiver q = *this;
    for (std::size_t f : nodes) {
      if (f >= n_) throw InvalidQuiver("frozen node out of range");
      q.frozen_[f] = true;
    }
    return q;
  }

  friend bool operator==(const Quiver& a, const Quiver& b) {
    return a.n_ == b.n_ && a.eps_ == b.eps_ && a.d_ == b.d_ && a.frozen_ == b.frozen_;
  }

 private:
  void validate() const {
    for (std::size_t i = 0; i < n_; ++i) {
      if (d_[i] <= 0) throw InvalidQuiver("multipliers must be positive");
      if ((*this)(i, i) != 0) throw InvalidQuiver("diagonal entries must vanish");
    }
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if ((*this)(i, j) * d_[i] != -(*this)(j, i) * d_[j])
          throw InvalidQuiver("exchange matrix times D^-1 is not skew-symmetric at (" + std::to_string(i + 1) + "," +
                              std::to_string(j + 1) + ")");
  }

  std::size_t n_ = 0;
  std::vector<int64_t> eps_;
  std::vector<int64_t> d_;
  std::vector<bool> frozen_;
};

inline bool is_permutation(const NodeBijection& s) {
  std::vector<bool> seen(s.size(), false);
  for (std::size_t x : s) {
    if (x >= s.size() || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

inline NodeBijection identity_bijection(std::size_t n) {
  NodeBijection s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = i;
  return s;
}

inline NodeBijection inverse(const NodeBijection& s) {
  NodeBijection r(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) r[s[i]] = i;
  return r;
}

/// (a * b)(i) = a(b(i)).
inline NodeBijection compose(const NodeBijection& a, const NodeBijection& b) {
  NodeBijection r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
  return r;
}

/// True iff s carries q1 onto q2: eps2(s i, s j) = eps1(i, j), with matching
/// multipliers and frozen status.
inline bool is_isomorphism(const Quiver& q1, const Quiver& q2, const NodeBijection& s) {
  if (q1.size() != q2.size() || s.size() != q1.size() || !is_permutation(s)) return false;
  for (std::size_t i = 0; i < q1.size(); ++i) {
    if (q1.multiplier(i) != q2.multiplier(s[i]) || q1.is_frozen(i) != q2.is_frozen(s[i])) return false;
    for (std::size_t j = 0; j < q1.size(); ++j)
      if (q1(i, j) != q2(s[i], s[j])) return false;
  }
  return true;
}

}  // namespace cluster
