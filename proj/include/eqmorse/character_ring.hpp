#pragma once

// Formal characters: finitely supported (or cone-truncated) integer
// combinations of weights, and polynomials in t over them.
//
// A windowed series is supported in anchor - closure(C*) and its stored
// multiplicities are exact at every weight xi with
//   level(xi) >= level(anchor) - depth,     level(xi) = <xi, p_C>,
// p_C the chamber direction. Weights outside the cone are exact zeros.
// A series without a window is a finite character, exact everywhere.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "eqmorse/errors.hpp"
#include "eqmorse/lattice_chambers.hpp"
#include "eqmorse/numeric.hpp"
#include "eqmorse/weight.hpp"

namespace eqmorse {

using TermMap = std::map<Weight, Integer>;

struct Window {
  ChamberRef chamber;
  Weight anchor;
  std::int64_t depth = 0;

  Integer level(const Weight& xi) const { return chamber->level(xi); }
  Integer floor() const { return chamber->level(anchor) - depth; }
  bool contains(const Weight& xi) const { return level(xi) >= floor(); }
};

inline bool compatible(const Window& a, const Window& b) { return a.chamber->same_cone(*b.chamber); }

class CharacterSeries {
 public:
  explicit CharacterSeries(std::size_t rank = 1) : rank_(rank) {}

  static CharacterSeries monomial(const Weight& w, const Integer& mult = 1) {
    CharacterSeries s(w.rank());
    if (mult != 0) s.terms_[w] = mult;
    return s;
  }

  /// Builds a series, dropping zero multiplicities and any term the window
  /// does not certify.
  static CharacterSeries from_terms(std::size_t rank, TermMap terms, std::optional<Window> window = {}) {
    CharacterSeries s(rank);
    s.window_ = std::move(window);
    for (auto& [w, m] : terms) {
      if (w.rank() != rank) throw Error(ErrorCode::RankMismatch, "term " + to_string(w) + " has wrong rank");
      if (m == 0) continue;
      if (s.window_ && !s.window_->contains(w)) continue;
      s.terms_.emplace(w, std::move(m));
    }
    return s;
  }

  std::size_t rank() const noexcept { return rank_; }
  const TermMap& terms() const noexcept { return terms_; }
  const std::optional<Window>& window() const noexcept { return window_; }
  bool is_complete() const noexcept { return !window_.has_value(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  bool certifies(const Weight& xi) const { return !window_ || window_->contains(xi); }

  Integer mult_at(const Weight& xi) const {
    if (xi.rank() != rank_) throw Error(ErrorCode::RankMismatch, "weight rank mismatch");
    if (!certifies(xi)) {
      throw Error(ErrorCode::OutsideWindow, "multiplicity at " + to_string(xi) + " is beyond depth " +
                                                std::to_string(window_->depth));
    }
    auto it = terms_.find(xi);
    return it == terms_.end() ? Integer(0) : it->second;
  }

  /// Total multiplicity (dimension of a finite character).
  Integer total() const {
    if (window_) throw Error(ErrorCode::NotFinite, "total multiplicity of a truncated series");
    Integer t = 0;
    for (const auto& [w, m] : terms_) t += m;
    return t;
  }

  /// Same terms, window cut down so its floor is at least `floor`.
  CharacterSeries truncated(const Window& w) const {
    if (window_ && !compatible(*window_, w)) throw Error(ErrorCode::WindowMismatch, "incompatible chambers");
    Window out = w;
    if (window_ && window_->floor() > w.floor()) {
      out.depth = to_int64(out.level(out.anchor) - window_->floor());
    }
    TermMap t = terms_;
    return from_terms(rank_, std::move(t), out);
  }

  CharacterSeries operator-() const {
    CharacterSeries s = *this;
    for (auto& [w, m] : s.terms_) m = -m;
    return s;
  }

  CharacterSeries scaled(const Integer& c) const {
    if (c == 0) {
      CharacterSeries s(rank_);
      s.window_ = window_;
      return s;
    }
    CharacterSeries s = *this;
    for (auto& [w, m] : s.terms_) m *= c;
    return s;
  }

  bool operator==(const CharacterSeries& o) const {
    if (rank_ != o.rank_ || terms_ != o.terms_ || window_.has_value() != o.window_.has_value()) return false;
    if (!window_) return true;
    return window_->chamber->same_cone(*o.window_->chamber) && window_->anchor == o.window_->anchor &&
           window_->depth == o.window_->depth;
  }

 private:
  std::size_t rank_;
  TermMap terms_;
  std::optional<Window> window_;
};

namespace detail {

inline Integer max_level(const Chamber& c, const TermMap& t) {
  Integer best = 0;
  bool first = true;
  for (const auto& [w, m] : t) {
    Integer l = c.level(w);
    if (first || l > best) best = l;
    first = false;
  }
  return best;
}

inline std::vector<Weight> support(const TermMap& t) {
  std::vector<Weight> out;
  out.reserve(t.size());
  for (const auto& [w, m] : t) out.push_back(w);
  return out;
}

/// Smallest-effort window containing `anchors` and certifying exactly the
/// weights at or above `floor`.
inline Window window_above(const ChamberRef& c, std::span<const Weight> anchors, const Integer& floor) {
  Window w;
  w.chamber = c;
  w.anchor = cone_upper_bound(*c, anchors);
  w.depth = to_int64(c->level(w.anchor) - floor);
  return w;
}

inline TermMap convolve(const TermMap& a, const TermMap& b, const std::optional<Window>& keep) {
  TermMap out;
  std::optional<Integer> floor;
  if (keep) floor = keep->floor();
  for (const auto& [x, ma] : a) {
    for (const auto& [y, mb] : b) {
      Weight z = x + y;
      if (floor && keep->level(z) < *floor) continue;
      out[z] += ma * mb;
    }
  }
  return out;
}

}  // namespace detail

enum class SeriesOp { add, sub, mul };

/// Ring operations. Windowed operands must share a chamber cone; the result
/// window is shrunk so every stored multiplicity remains exact.
inline CharacterSeries series_combine(const CharacterSeries& a, const CharacterSeries& b, SeriesOp op) {
  if (a.rank() != b.rank()) {
    throw Error(ErrorCode::RankMismatch, "series ranks " + std::to_string(a.rank()) + " and " +
                                             std::to_string(b.rank()));
  }
  const auto& wa = a.window();
  const auto& wb = b.window();
  if (wa && wb && !compatible(*wa, *wb)) {
    throw Error(ErrorCode::WindowMismatch, "series windows belong to different chambers");
  }
  const std::size_t r = a.rank();

  if (op == SeriesOp::add || op == SeriesOp::sub) {
    std::optional<Window> out;
    if (wa || wb) {
      ChamberRef c = wa ? wa->chamber : wb->chamber;
      Integer floor = wa && wb ? std::max(wa->floor(), wb->floor()) : (wa ? wa->floor() : wb->floor());
      std::vector<Weight> anchors;
      if (wa) {
        anchors.push_back(wa->anchor);
      } else {
        for (const auto& [w, m] : a.terms()) {
          if (c->level(w) >= floor) anchors.push_back(w);
        }
      }
      if (wb) {
        anchors.push_back(wb->anchor);
      } else {
        for (const auto& [w, m] : b.terms()) {
          if (c->level(w) >= floor) anchors.push_back(w);
        }
      }
      out = detail::window_above(c, anchors, floor);
    }
    TermMap t = a.terms();
    for (const auto& [w, m] : b.terms()) {
      if (op == SeriesOp::add) {
        t[w] += m;
      } else {
        t[w] -= m;
      }
    }
    return CharacterSeries::from_terms(r, std::move(t), std::move(out));
  }

  if (!wa && !wb) return CharacterSeries::from_terms(r, detail::convolve(a.terms(), b.terms(), std::nullopt));

  if (wa && wb) {
    Window out{wa->chamber, wa->anchor + wb->anchor, std::min(wa->depth, wb->depth)};
    return CharacterSeries::from_terms(r, detail::convolve(a.terms(), b.terms(), out), out);
  }

  const CharacterSeries& w = wa ? a : b;
  const CharacterSeries& f = wa ? b : a;
  const Window& win = *w.window();
  if (f.is_zero()) return CharacterSeries::from_terms(r, {}, win);
  Integer floor = win.floor() + detail::max_level(*win.chamber, f.terms());
  auto supp = detail::support(f.terms());
  Weight shift = cone_upper_bound(*win.chamber, supp);
  Window out{win.chamber, win.anchor + shift, 0};
  out.depth = to_int64(out.level(out.anchor) - floor);
  return CharacterSeries::from_terms(r, detail::convolve(w.terms(), f.terms(), out), out);
}

inline CharacterSeries operator+(const CharacterSeries& a, const CharacterSeries& b) {
  return series_combine(a, b, SeriesOp::add);
}
inline CharacterSeries operator-(const CharacterSeries& a, const CharacterSeries& b) {
  return series_combine(a, b, SeriesOp::sub);
}
inline CharacterSeries operator*(const CharacterSeries& a, const CharacterSeries& b) {
  return series_combine(a, b, SeriesOp::mul);
}

inline Integer mult_at(const CharacterSeries& a, const Weight& xi) { return a.mult_at(xi); }

/// First weight (in map order) carrying a negative multiplicity.
inline std::optional<Weight> first_negative(const CharacterSeries& a) {
  for (const auto& [w, m] : a.terms()) {
    if (m < 0) return w;
  }
  return std::nullopt;
}

/// First weight certified by both series (possibly truncated in different
/// chambers) where their multiplicities differ.
inline std::optional<Weight> first_disagreement(const CharacterSeries& a, const CharacterSeries& b) {
  if (a.rank() != b.rank()) throw Error(ErrorCode::RankMismatch, "series ranks differ");
  std::set<Weight> keys;
  for (const auto& [w, m] : a.terms()) keys.insert(w);
  for (const auto& [w, m] : b.terms()) keys.insert(w);
  for (const auto& w : keys) {
    if (!a.certifies(w) || !b.certifies(w)) continue;
    if (a.mult_at(w) != b.mult_at(w)) return w;
  }
  return std::nullopt;
}

/// sum q_xi exp(i <xi, theta>) for a finite character. Cross-check use only.
inline std::complex<double> evaluate_at_theta(const CharacterSeries& a, std::span<const double> theta) {
  if (a.window()) throw Error(ErrorCode::NotFinite, "cannot evaluate a truncated infinite series");
  if (theta.size() != a.rank()) throw Error(ErrorCode::RankMismatch, "theta has wrong length");
  std::complex<double> sum = 0;
  for (const auto& [w, m] : a.terms()) {
    double phase = 0;
    for (std::size_t i = 0; i < theta.size(); ++i) phase += static_cast<double>(w[i]) * theta[i];
    sum += m.get_d() * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return sum;
}

/// Image under xi -> <xi, v> for v in the open chamber of the window. The
/// result lives in rank one with chamber R+.
inline CharacterSeries push_forward(const CharacterSeries& a, const Weight& v) {
  TermMap t;
  for (const auto& [w, m] : a.terms()) t[Weight{static_cast<std::int64_t>(to_int64(pairing(w, v)))}] += m;
  if (!a.window()) return CharacterSeries::from_terms(1, std::move(t));
  const Window& win = *a.window();
  if (!win.chamber->contains(v)) {
    throw Error(ErrorCode::WindowMismatch, "push-forward vector " + to_string(v) + " is not in the chamber");
  }
  const Weight& p = win.chamber->direction();
  std::optional<Rational> ratio;
  for (const auto& g : win.chamber->walls()) {
    Rational q(pairing(g, v), pairing(g, p));
    if (!ratio || q < *ratio) ratio = q;
  }
  Window out;
  out.chamber = rank_one_chamber(+1);
  out.anchor = Weight{to_int64(pairing(win.anchor, v))};
  out.depth = ratio ? to_int64(floor_of(*ratio * win.depth)) : win.depth;
  return CharacterSeries::from_terms(1, std::move(t), out);
}

/// Polynomial in the formal variable t with character coefficients.
class MorsePolynomial {
 public:
  explicit MorsePolynomial(std::size_t rank = 1) : rank_(rank), zero_(rank) {}
  MorsePolynomial(std::size_t rank, std::vector<CharacterSeries> coeffs)
      : rank_(rank), coeffs_(std::move(coeffs)), zero_(rank) {
    for (const auto& c : coeffs_) {
      if (c.rank() != rank_) throw Error(ErrorCode::RankMismatch, "coefficient rank mismatch");
    }
  }

  std::size_t rank() const noexcept { return rank_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  const std::vector<CharacterSeries>& coeffs() const noexcept { return coeffs_; }

  /// Coefficient of t^k; the zero series beyond the stored degrees.
  const CharacterSeries& coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : zero_; }

  void add_to(std::size_t k, const CharacterSeries& s) {
    if (s.rank() != rank_) throw Error(ErrorCode::RankMismatch, "coefficient rank mismatch");
    while (coeffs_.size() <= k) coeffs_.emplace_back(rank_);
    coeffs_[k] = coeffs_[k] + s;
  }

  void set(std::size_t k, CharacterSeries s) {
    if (s.rank() != rank_) throw Error(ErrorCode::RankMismatch, "coefficient rank mismatch");
    while (coeffs_.size() <= k) coeffs_.emplace_back(rank_);
    coeffs_[k] = std::move(s);
  }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const CharacterSeries& c) { return c.is_zero(); });
  }

  /// Drops trailing zero coefficients without windows.
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero() && coeffs_.back().is_complete()) coeffs_.pop_back();
  }

  MorsePolynomial shifted(std::size_t power) const {
    MorsePolynomial out(rank_);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) out.set(k + power, coeffs_[k]);
    return out;
  }

  friend MorsePolynomial operator+(const MorsePolynomial& a, const MorsePolynomial& b) {
    if (a.rank_ != b.rank_) throw Error(ErrorCode::RankMismatch, "polynomial ranks differ");
    MorsePolynomial out(a.rank_);
    for (std::size_t k = 0; k < std::max(a.size(), b.size()); ++k) out.set(k, a.coeff(k) + b.coeff(k));
    return out;
  }

  friend MorsePolynomial operator-(const MorsePolynomial& a, const MorsePolynomial& b) {
    if (a.rank_ != b.rank_) throw Error(ErrorCode::RankMismatch, "polynomial ranks differ");
    MorsePolynomial out(a.rank_);
    for (std::size_t k = 0; k < std::max(a.size(), b.size()); ++k) out.set(k, a.coeff(k) - b.coeff(k));
    return out;
  }

  /// Coefficientwise equality of terms, ignoring trailing zeros and windows.
  bool same_terms(const MorsePolynomial& o) const {
    for (std::size_t k = 0; k < std::max(size(), o.size()); ++k) {
      if (coeff(k).terms() != o.coeff(k).terms()) return false;
    }
    return true;
  }

 private:
  std::size_t rank_;
  std::vector<CharacterSeries> coeffs_;
  CharacterSeries zero_;
};

/// Scalar (weight-zero) polynomial from integer coefficients; handy in tests.
inline MorsePolynomial scalar_polynomial(std::size_t rank, std::initializer_list<long> cs) {
  MorsePolynomial p(rank);
  std::size_t k = 0;
  for (long c : cs) p.set(k++, CharacterSeries::monomial(Weight::zero(rank), c));
  return p;
}

struct Division {
  MorsePolynomial quotient;
  CharacterSeries remainder;
};

/// p = (1 + t) * quotient + remainder, remainder = p(-1).
inline Division poly_divide_one_plus_t(const MorsePolynomial& p) {
  const std::size_t n = p.size();
  if (n == 0) return {MorsePolynomial(p.rank()), CharacterSeries(p.rank())};
  std::vector<CharacterSeries> q(n > 1 ? n - 1 : 0, CharacterSeries(p.rank()));
  if (n > 1) {
    q[n - 2] = p.coeff(n - 1);
    for (std::size_t k = n - 2; k >= 1; --k) q[k - 1] = p.coeff(k) - q[k];
  }
  CharacterSeries rem = n > 1 ? p.coeff(0) - q[0] : p.coeff(0);
  MorsePolynomial quot(p.rank(), std::move(q));
  quot.trim();
  return {std::move(quot), std::move(rem)};
}

inline MorsePolynomial times_one_plus_t(const MorsePolynomial& q) { return q + q.shifted(1); }

struct Violation {
  std::size_t degree = 0;
  Weight weight;
  Integer mult;
};

inline std::optional<Violation> is_nonneg(const MorsePolynomial& p) {
  for (std::size_t k = 0; k < p.size(); ++k) {
    for (const auto& [w, m] : p.coeffs()[k].terms()) {
      if (m < 0) return Violation{k, w, m};
    }
  }
  return std::nullopt;
}

inline CharacterSeries specialize_t(const MorsePolynomial& p, int value) {
  if (value != 1 && value != -1) throw Error(ErrorCode::Unsupported, "t may only be specialized to +1 or -1");
  CharacterSeries acc(p.rank());
  for (std::size_t k = 0; k < p.size(); ++k) {
    acc = (value == -1 && k % 2 == 1) ? acc - p.coeffs()[k] : acc + p.coeffs()[k];
  }
  return acc;
}

/// Window shared by all coefficients (nullopt if every coefficient is finite).
inline std::optional<Window> common_window(const MorsePolynomial& p) {
  CharacterSeries acc(p.rank());
  for (const auto& c : p.coeffs()) acc = acc + c.scaled(0);
  return acc.window();
}

}  // namespace eqmorse
