#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "eqmorse/errors.hpp"
#include "eqmorse/numeric.hpp"

namespace eqmorse {

/// An integer lattice vector. Used both for weights (elements of the weight
/// lattice) and for lattice vectors of the Lie algebra; the identification
/// of the two lattices with Z^r makes the pairing the dot product.
class Weight {
 public:
  Weight() = default;
  explicit Weight(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}
  Weight(std::initializer_list<std::int64_t> coords) : coords_(coords) {}

  static Weight zero(std::size_t rank) { return Weight(std::vector<std::int64_t>(rank, 0)); }

  static Weight from_integers(const std::vector<Integer>& v) {
    std::vector<std::int64_t> c;
    c.reserve(v.size());
    for (const auto& z : v) c.push_back(to_int64(z));
    return Weight(std::move(c));
  }

  std::size_t rank() const noexcept { return coords_.size(); }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<std::int64_t>& coords() const noexcept { return coords_; }

  bool is_zero() const noexcept {
    for (auto c : coords_) {
      if (c != 0) return false;
    }
    return true;
  }

  Weight operator-() const {
    Weight out = *this;
    for (auto& c : out.coords_) {
      if (c == INT64_MIN) throw Error(ErrorCode::Overflow, "weight negation overflow");
      c = -c;
    }
    return out;
  }

  Weight& operator+=(const Weight& o) {
    check_rank(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (__builtin_add_overflow(coords_[i], o.coords_[i], &coords_[i])) {
        throw Error(ErrorCode::Overflow, "weight addition overflow");
      }
    }
    return *this;
  }

  Weight& operator-=(const Weight& o) { return *this += -o; }

  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }

  friend Weight operator*(std::int64_t k, Weight a) {
    for (auto& c : a.coords_) {
      if (__builtin_mul_overflow(c, k, &c)) throw Error(ErrorCode::Overflow, "weight scaling overflow");
    }
    return a;
  }

  auto operator<=>(const Weight&) const = default;
  bool operator==(const Weight&) const = default;

  void check_rank(const Weight& o) const {
    if (o.rank() != rank()) {
      throw Error(ErrorCode::RankMismatch,
                  "rank " + std::to_string(rank()) + " vs " + std::to_string(o.rank()));
    }
  }

 private:
  std::vector<std::int64_t> coords_;
};

inline Integer pairing(const Weight& a, const Weight& b) {
  a.check_rank(b);
  Integer s = 0;
  for (std::size_t i = 0; i < a.rank(); ++i) s += Integer(static_cast<long>(a[i])) * static_cast<long>(b[i]);
  return s;
}

inline Rational pairing(const Weight& a, const RationalVector& x) {
  if (a.rank() != x.size()) {
    throw Error(ErrorCode::RankMismatch,
                "rank " + std::to_string(a.rank()) + " vs " + std::to_string(x.size()));
  }
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * static_cast<long>(a[i]);
  return s;
}

inline std::int64_t max_norm(const Weight& w) {
  std::int64_t m = 0;
  for (auto c : w.coords()) m = std::max<std::int64_t>(m, c < 0 ? -c : c);
  return m;
}

/// Primitive representative of the line through w, oriented so the first
/// nonzero coordinate is positive.
inline Weight hyperplane_normal(const Weight& w) {
  std::vector<Integer> v;
  for (auto c : w.coords()) v.emplace_back(static_cast<long>(c));
  auto p = primitive_direction(v);
  for (const auto& z : p) {
    if (z != 0) {
      if (z < 0) {
        for (auto& y : p) y = -y;
      }
      break;
    }
  }
  return Weight::from_integers(p);
}

inline RationalVector to_rational(const Weight& w) {
  RationalVector v;
  v.reserve(w.rank());
  for (auto c : w.coords()) v.emplace_back(static_cast<long>(c));
  return v;
}

inline std::string to_string(const Weight& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.rank(); ++i) {
    if (i) s += ",";
    s += std::to_string(w[i]);
  }
  return s + ")";
}

inline std::string to_string(const RationalVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v[i]);
  }
  return s + ")";
}

}  // namespace eqmorse
