#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "cluster/error.hpp"

namespace cluster {

/// Largest number of variables a polynomial ring may have.
inline constexpr std::size_t kMaxVariables = 16;

/// Exponent tuple of a single monomial. Slots past the ring size stay zero.
class Monomial {
 public:
  Monomial() = default;

  static Monomial variable(std::size_t index, int32_t power = 1) {
    if (index >= kMaxVariables) throw RingMismatch("variable index out of range");
    Monomial m;
    m.exp_[index] = power;
    m.degree_ = power;
    return m;
  }

  static Monomial from_exponents(const std::vector<int32_t>& e) {
    if (e.size() > kMaxVariables) throw RingMismatch("too many variables");
    Monomial m;
    for (std::size_t i = 0; i < e.size(); ++i) {
      m.exp_[i] = e[i];
      m.degree_ += e[i];
    }
    return m;
  }

  int32_t operator[](std::size_t i) const { return exp_[i]; }
  int64_t degree() const { return degree_; }
  bool is_one() const { return degree_ == 0 && std::all_of(exp_.begin(), exp_.end(), [](int32_t x) { return x == 0; }); }

  void set(std::size_t i, int32_t value) {
    degree_ += int64_t{value} - exp_[i];
    exp_[i] = value;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVariables; ++i) m.exp_[i] = a.exp_[i] + b.exp_[i];
    m.degree_ = a.degree_ + b.degree_;
    return m;
  }

  /// Exponent-wise difference; callers check divides() first when the
  /// result must stay non-negative.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVariables; ++i) m.exp_[i] = a.exp_[i] - b.exp_[i];
    m.degree_ = a.degree_ - b.degree_;
    return m;
  }

  bool divides(const Monomial& other) const {
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (exp_[i] > other.exp_[i]) return false;
    return true;
  }

  static Monomial min(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      m.exp_[i] = std::min(a.exp_[i], b.exp_[i]);
      m.degree_ += m.exp_[i];
    }
    return m;
  }

  static Monomial max(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      m.exp_[i] = std::max(a.exp_[i], b.exp_[i]);
      m.degree_ += m.exp_[i];
    }
    return m;
  }

  std::vector<int32_t> exponents(std::size_t nvars) const {
    return std::vector<int32_t>(exp_.begin(), exp_.begin() + static_cast<std::ptrdiff_t>(nvars));
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree_ == b.degree_ && a.exp_ == b.exp_;
  }

  /// Graded lexicographic order, variable 0 largest.
  friend bool grlex_less(const Monomial& a, const Monomial& b) {
    if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (a.exp_[i] != b.exp_[i]) return a.exp_[i] < b.exp_[i];
    return false;
  }

  std::size_t hash() const {
    std::size_t h = static_cast<std::size_t>(degree_) * 0x9e3779b97f4a7c15ULL;
    for (int32_t e : exp_) h = (h ^ static_cast<std::size_t>(static_cast<uint32_t>(e))) * 0x100000001b3ULL;
    return h;
  }

 private:
  std::array<int32_t, kMaxVariables> exp_{};
  int64_t degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Signed exponent tuple, e.g. a denominator vector.
using ExponentVector = std::vector<int32_t>;

}  // namespace cluster
