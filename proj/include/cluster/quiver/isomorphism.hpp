#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "cluster/quiver/quiver.hpp"

namespace cluster {

/// Isomorphism-invariant encoding of a quiver together with the node
/// placement that realizes it: node i sits at position position[i].
struct CanonicalForm {
  std::vector<int64_t> code;
  std::vector<std::size_t> position;
};

namespace detail {

/// Stable node colors from iterated neighbourhood refinement. Colors are
/// ranks of isomorphism-invariant signatures, so isomorphic quivers receive
/// the same color multiset.
inline std::vector<std::size_t> refined_colors(const Quiver& q) {
  const std::size_t n = q.size();
  using Signature = std::vector<int64_t>;
  auto rank = [n](const std::vector<Signature>& sigs) {
    std::vector<Signature> sorted = sigs;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::size_t> colors(n);
    for (std::size_t i = 0; i < n; ++i)
      colors[i] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), sigs[i]) - sorted.begin());
    return std::make_pair(colors, sorted.size());
  };
  std::vector<Signature> sigs(n);
  for (std::size_t i = 0; i < n; ++i) sigs[i] = {q.is_frozen(i) ? 1 : 0, q.multiplier(i)};
  auto [colors, count] = rank(sigs);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::tuple<int64_t, int64_t, int64_t>> nbrs;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i && (q(i, j) != 0 || q(j, i) != 0))
          nbrs.emplace_back(static_cast<int64_t>(colors[j]), q(i, j), q(j, i));
      std::sort(nbrs.begin(), nbrs.end());
      Signature s{static_cast<int64_t>(colors[i])};
      for (const auto& [c, out, in] : nbrs) {
        s.push_back(c);
        s.push_back(out);
        s.push_back(in);
      }
      sigs[i] = std::move(s);
    }
    auto [next, next_count] = rank(sigs);
    colors = std::move(next);
    if (next_count == count) break;
    count = next_count;
  }
  return colors;
}

class Canonizer {
 public:
  explicit Canonizer(const Quiver& q) : q_(q), n_(q.size()), colors_(refined_colors(q)) {
    cell_of_position_.resize(n_);
    std::vector<std::size_t> sorted = colors_;
    std::sort(sorted.begin(), sorted.end());
    cell_of_position_ = sorted;
    header_.push_back(static_cast<int64_t>(n_));
    for (std::size_t p = 0; p < n_; ++p) {
      // Any node of the cell gives the same label.
      std::size_t node = static_cast<std::size_t>(std::find(colors_.begin(), colors_.end(), sorted[p]) - colors_.begin());
      header_.push_back(q.is_frozen(node) ? 1 : 0);
      header_.push_back(q.multiplier(node));
    }
  }

  CanonicalForm run() {
    order_.clear();
    used_.assign(n_, false);
    current_.clear();
    best_.clear();
    search();
    CanonicalForm out;
    out.code = header_;
    out.code.insert(out.code.end(), best_.begin(), best_.end());
    out.position.resize(n_);
    for (std::size_t p = 0; p < n_; ++p) out.position[best_order_[p]] = p;
    return out;
  }

 private:
  /// Sign of current_ against the same-length prefix of best_.
  int compare_prefix() const {
    for (std::size_t i = 0; i < current_.size(); ++i) {
      if (current_[i] != best_[i]) return current_[i] < best_[i] ? -1 : 1;
    }
    return 0;
  }

  void search() {
    const std::size_t p = order_.size();
    if (p == n_) {
      if (best_order_.empty() || compare_prefix() < 0) {
        best_ = current_;
        best_order_ = order_;
      }
      return;
    }
    for (std::size_t v = 0; v < n_; ++v) {
      if (used_[v] || colors_[v] != cell_of_position_[p]) continue;
      const std::size_t mark = current_.size();
      for (std::size_t j = 0; j < p; ++j) {
        current_.push_back(q_(v, order_[j]));
        current_.push_back(q_(order_[j], v));
      }
      if (best_order_.empty() || compare_prefix() <= 0) {
        used_[v] = true;
        order_.push_back(v);
        search();
        order_.pop_back();
        used_[v] = false;
      }
      current_.resize(mark);
    }
  }

  const Quiver& q_;
  std::size_t n_;
  std::vector<std::size_t> colors_;
  std::vector<std::size_t> cell_of_position_;
  std::vector<int64_t> header_;
  std::vector<std::size_t> order_;
  std::vector<bool> used_;
  std::vector<int64_t> current_;
  std::vector<int64_t> best_;
  std::vector<std::size_t> best_order_;
};

}  // namespace detail

/// Minimum encoding over all node orders compatible with the refined colors.
inline CanonicalForm canonical_form(const Quiver& q) { return detail::Canonizer(q).run(); }

/// A bijection s with eps2(s i, s j) = eps1(i, j) preserving multipliers and
/// frozen status (frozen nodes map setwise), or absence.
inline std::optional<NodeBijection> is_isomorphic(const Quiver& q1, const Quiver& q2) {
  if (q1.size() != q2.size()) return std::nullopt;
  CanonicalForm c1 = canonical_form(q1);
  CanonicalForm c2 = canonical_form(q2);
  if (c1.code != c2.code) return std::nullopt;
  NodeBijection at2 = inverse(c2.position);
  NodeBijection s(q1.size());
  for (std::size_t i = 0; i < q1.size(); ++i) s[i] = at2[c1.position[i]];
  return s;
}

inline constexpr std::size_t kAutomorphismSearchBound = 12;

/// Every automorphism, in lexicographic order of image lists.
inline std::vector<NodeBijection> automorphisms(const Quiver& q, std::size_t bound = kAutomorphismSearchBound) {
  const std::size_t n = q.size();
  if (n > bound) throw BoundExceeded("automorphism search limited to " + std::to_string(bound) + " nodes");
  const std::vector<std::size_t> colors = detail::refined_colors(q);
  std::vector<NodeBijection> out;
  NodeBijection s(n);
  std::vector<bool> used(n, false);
  auto extend = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      out.push_back(s);
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (used[v] || colors[v] != colors[i]) continue;
      bool ok = q(v, v) == q(i, i);
      for (std::size_t j = 0; j < i && ok; ++j) ok = q(v, s[j]) == q(i, j) && q(s[j], v) == q(j, i);
      if (!ok) continue;
      used[v] = true;
      s[i] = v;
      self(self, i + 1);
      used[v] = false;
    }
  };
  extend(extend, 0);
  return out;
}

}  // namespace cluster
