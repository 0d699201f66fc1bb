#pragma once

// Independent reference computations. Nothing here calls into the chamber
// enumerator or the character-series arithmetic it is compared against.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using Vec = std::vector<std::int64_t>;

inline std::int64_t dot(const Vec& a, const Vec& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Sign vectors of all grid points in [-n, n]^rank off every hyperplane.
inline std::set<std::vector<int>> grid_sign_vectors(const std::vector<Vec>& weights, std::size_t rank, std::int64_t n) {
  std::set<std::vector<int>> out;
  Vec p(rank, -n);
  while (true) {
    std::vector<int> sv;
    bool on_wall = false;
    for (const auto& w : weights) {
      std::int64_t d = dot(w, p);
      if (d == 0) {
        on_wall = true;
        break;
      }
      sv.push_back(d > 0 ? 1 : -1);
    }
    if (!on_wall) out.insert(sv);
    std::size_t i = 0;
    while (i < rank && p[i] == n) p[i++] = -n;
    if (i == rank) break;
    ++p[i];
  }
  return out;
}

/// Sparse Laurent polynomial in `rank` variables with integer coefficients.
using Poly = std::map<Vec, std::int64_t>;

inline Poly multiply(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [wa, ma] : a) {
    for (const auto& [wb, mb] : b) {
      Vec w(wa.size());
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = wa[i] + wb[i];
      out[w] += ma * mb;
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

/// Character of the fiber of K^C at an isolated point, by multiplying one
/// truncated geometric series per weight: sum_{m>=0} e^{-m w} when
/// <w, dir> > 0, sum_{m>=1} e^{m w} otherwise. Terms with <xi, dir> < -depth
/// are dropped only at the end; each factor is expanded far enough that no
/// dropped product could reach the window.
inline Poly isolated_character(const std::vector<Vec>& weights, const Vec& dir, std::int64_t depth) {
  const std::size_t r = dir.size();
  Poly acc{{Vec(r, 0), 1}};
  for (const auto& w : weights) {
    std::int64_t pw = dot(w, dir);
    Vec step(r);
    std::int64_t first = pw > 0 ? 0 : 1;
    for (std::size_t i = 0; i < r; ++i) step[i] = pw > 0 ? -w[i] : w[i];
    std::int64_t lvl = pw > 0 ? pw : -pw;
    Poly geo;
    for (std::int64_t m = first; m * lvl <= depth; ++m) {
      Vec x(r);
      for (std::size_t i = 0; i < r; ++i) x[i] = m * step[i];
      geo[x] += 1;
    }
    acc = multiply(acc, geo);
  }
  Poly out;
  for (const auto& [w, m] : acc) {
    if (dot(w, dir) >= -depth) out[w] = m;
  }
  return out;
}

/// Dense polynomial division by (1 + t), written as synthetic division at t = -1.
inline std::pair<std::vector<std::int64_t>, std::int64_t> divide_by_one_plus_t(std::vector<std::int64_t> p) {
  if (p.empty()) return {{}, 0};
  std::vector<std::int64_t> q(p.size() - 1, 0);
  std::int64_t carry = 0;
  for (std::size_t k = p.size(); k-- > 1;) {
    carry = p[k] - carry;
    q[k - 1] = carry;
  }
  return {q, p[0] - (q.empty() ? 0 : q[0])};
}

}  // namespace oracle
