#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "eqmorse/errors.hpp"

namespace eqmorse {

/// P(s,t) = sum h^{k,l} s^k t^l for a compact complex manifold of complex
/// dimension `dim`. Coefficients are signed so residuals of identities can be
/// carried in the same type; zero coefficients are not stored.
class HodgePolynomial {
 public:
  using Key = std::pair<int, int>;
  static constexpr int max_dim = 32;

  HodgePolynomial() = default;
  explicit HodgePolynomial(int dim) : dim_(dim) { check_dim(dim); }
  HodgePolynomial(int dim, std::initializer_list<std::tuple<int, int, std::int64_t>> entries) : dim_(dim) {
    check_dim(dim);
    for (auto [k, l, h] : entries) add(k, l, h);
  }

  /// 1 (the Hodge polynomial of a point).
  static HodgePolynomial point() { return HodgePolynomial(0, {{0, 0, 1}}); }

  /// sum_{k=0..n} (st)^k, projective space.
  static HodgePolynomial projective(int n) {
    HodgePolynomial p(n);
    for (int k = 0; k <= n; ++k) p.add(k, k, 1);
    return p;
  }

  /// 1 + g(s+t) + st, a compact curve of genus g.
  static HodgePolynomial curve(std::int64_t genus) {
    HodgePolynomial p(1, {{0, 0, 1}, {1, 1, 1}});
    p.add(1, 0, genus);
    p.add(0, 1, genus);
    return p;
  }

  int dim() const noexcept { return dim_; }
  const std::map<Key, std::int64_t>& coeffs() const noexcept { return coeffs_; }

  std::int64_t at(int k, int l) const {
    auto it = coeffs_.find({k, l});
    return it == coeffs_.end() ? 0 : it->second;
  }

  void add(int k, int l, std::int64_t h) {
    if (h == 0) return;
    auto& c = coeffs_[{k, l}];
    c += h;
    if (c == 0) coeffs_.erase({k, l});
  }

  void set_dim(int dim) {
    check_dim(dim);
    dim_ = dim;
  }

  bool is_zero() const noexcept { return coeffs_.empty(); }

  bool in_range() const {
    for (const auto& [key, h] : coeffs_) {
      if (key.first < 0 || key.second < 0 || key.first > dim_ || key.second > dim_) return false;
    }
    return true;
  }

  /// h^{k,l} = h^{l,k}
  bool symmetric() const {
    for (const auto& [key, h] : coeffs_) {
      if (at(key.second, key.first) != h) return false;
    }
    return true;
  }

  /// h^{k,l} = h^{n-k,n-l}
  bool dual() const {
    for (const auto& [key, h] : coeffs_) {
      if (at(dim_ - key.first, dim_ - key.second) != h) return false;
    }
    return true;
  }

  bool nonnegative() const {
    for (const auto& [key, h] : coeffs_) {
      if (h < 0) return false;
    }
    return true;
  }

  /// Multiply by (st)^k; the dimension is left to the caller.
  HodgePolynomial times_st_power(int k) const {
    HodgePolynomial out(dim_);
    for (const auto& [key, h] : coeffs_) out.add(key.first + k, key.second + k, h);
    return out;
  }

  /// Multiply by (1 + st).
  HodgePolynomial times_one_plus_st() const { return *this + times_st_power(1); }

  /// P(0,t) as coefficients of t^k.
  std::vector<std::int64_t> restrict_s_zero() const {
    std::vector<std::int64_t> out;
    for (const auto& [key, h] : coeffs_) {
      if (key.first != 0) continue;
      if (out.size() <= static_cast<std::size_t>(key.second)) out.resize(key.second + 1, 0);
      out[key.second] += h;
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
  }

  /// P(t,t) as coefficients of t^k.
  std::vector<std::int64_t> diagonal() const {
    std::vector<std::int64_t> out;
    for (const auto& [key, h] : coeffs_) {
      std::size_t d = static_cast<std::size_t>(key.first + key.second);
      if (out.size() <= d) out.resize(d + 1, 0);
      out[d] += h;
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
  }

  /// Todd genus P(0,-1).
  std::int64_t todd_genus() const {
    std::int64_t tau = 0;
    for (const auto& [key, h] : coeffs_) {
      if (key.first == 0) tau += key.second % 2 ? -h : h;
    }
    return tau;
  }

  friend HodgePolynomial operator+(const HodgePolynomial& a, const HodgePolynomial& b) {
    HodgePolynomial out(std::max(a.dim_, b.dim_));
    for (const auto& [key, h] : a.coeffs_) out.add(key.first, key.second, h);
    for (const auto& [key, h] : b.coeffs_) out.add(key.first, key.second, h);
    return out;
  }

  friend HodgePolynomial operator-(const HodgePolynomial& a, const HodgePolynomial& b) {
    HodgePolynomial out(std::max(a.dim_, b.dim_));
    for (const auto& [key, h] : a.coeffs_) out.add(key.first, key.second, h);
    for (const auto& [key, h] : b.coeffs_) out.add(key.first, key.second, -h);
    return out;
  }

  friend HodgePolynomial operator*(const HodgePolynomial& a, const HodgePolynomial& b) {
    HodgePolynomial out(a.dim_ + b.dim_);
    for (const auto& [ka, ha] : a.coeffs_) {
      for (const auto& [kb, hb] : b.coeffs_) out.add(ka.first + kb.first, ka.second + kb.second, ha * hb);
    }
    return out;
  }

  /// Equality of coefficients; dimensions are not compared.
  bool same_coeffs(const HodgePolynomial& o) const { return coeffs_ == o.coeffs_; }
  bool operator==(const HodgePolynomial& o) const { return dim_ == o.dim_ && coeffs_ == o.coeffs_; }

  /// Human-readable form such as "1 + 2*s*t + s^2*t^2".
  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (const auto& [key, h] : coeffs_) {
      std::string mono;
      auto pw = [](const char* v, int e) -> std::string {
        if (e == 0) return "";
        return e == 1 ? std::string(v) : std::string(v) + "^" + std::to_string(e);
      };
      std::string s = pw("s", key.first), t = pw("t", key.second);
      mono = s.empty() ? t : (t.empty() ? s : s + "*" + t);
      std::int64_t a = h < 0 ? -h : h;
      std::string term = mono.empty() ? std::to_string(a) : (a == 1 ? mono : std::to_string(a) + "*" + mono);
      if (out.empty()) {
        out = h < 0 ? "-" + term : term;
      } else {
        out += h < 0 ? " - " + term : " + " + term;
      }
    }
    return out;
  }

 private:
  static void check_dim(int dim) {
    if (dim < 0 || dim > max_dim) {
      throw Error(ErrorCode::ValidationError, "Hodge polynomial dimension " + std::to_string(dim) + " out of range");
    }
  }

  int dim_ = 0;
  std::map<Key, std::int64_t> coeffs_;
};

}  // namespace eqmorse
