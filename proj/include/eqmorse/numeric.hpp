#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "eqmorse/errors.hpp"

namespace eqmorse {

using Integer = mpz_class;
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

inline std::string to_string(const Integer& z) { return z.get_str(); }

/// "p/q" for proper fractions, "p" when the denominator is one.
inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& t) {
    while (!t.empty() && (t.back() == ' ' || t.back() == '\t')) t.pop_back();
    std::size_t i = 0;
    while (i < t.size() && (t[i] == ' ' || t[i] == '\t')) ++i;
    t.erase(0, i);
  };
  trim(s);
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty rational literal");
  if (s.front() == '+') s.erase(0, 1);
  for (char c : s) {
    if (!(c == '-' || c == '/' || (c >= '0' && c <= '9'))) {
      throw Error(ErrorCode::ParseError, "malformed rational literal '" + std::string(text) + "'");
    }
  }
  Rational q;
  if (q.set_str(s, 10) != 0) {
    throw Error(ErrorCode::ParseError, "malformed rational literal '" + std::string(text) + "'");
  }
  if (q.get_den() == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw Error(ErrorCode::Overflow, "integer " + z.get_str() + " exceeds 64 bits");
  return z.get_si();
}

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Integer floor_of(const Rational& q) { return floor_div(q.get_num(), q.get_den()); }
inline Integer ceil_of(const Rational& q) { return ceil_div(q.get_num(), q.get_den()); }

inline int sign_of(const Integer& z) { return sgn(z); }
inline int sign_of(const Rational& q) { return sgn(q); }

/// Scale a nonzero rational vector to the primitive integer vector on the
/// same ray. The zero vector maps to zeros.
inline std::vector<Integer> primitive_direction(const RationalVector& v) {
  Integer l = 1;
  for (const auto& x : v) {
    if (x != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
  }
  std::vector<Integer> out;
  out.reserve(v.size());
  Integer g = 0;
  for (const auto& x : v) {
    Integer z = x.get_num() * (l / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    out.push_back(z);
  }
  if (g > 1) {
    for (auto& z : out) z /= g;
  }
  return out;
}

inline std::vector<Integer> primitive_direction(const std::vector<Integer>& v) {
  Integer g = 0;
  for (const auto& z : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
  std::vector<Integer> out = v;
  if (g > 1) {
    for (auto& z : out) z /= g;
  }
  return out;
}

namespace linalg {

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> rref(RationalMatrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[row]);
    Rational inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (std::size_t c = 0; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(RationalMatrix m, std::size_t cols) { return rref(m, cols).size(); }

/// Basis of {x : m x = 0}.
inline RationalMatrix nullspace(RationalMatrix m, std::size_t cols) {
  auto pivots = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  RationalMatrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RationalVector x(cols, Rational(0));
    x[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -m[r][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace linalg
}  // namespace eqmorse
