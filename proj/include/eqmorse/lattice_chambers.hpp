#pragma once

// Weight-lattice geometry: action chambers of a central hyperplane
// arrangement, dual cones, polarization of isotropy weights, and the search
// for separating lattice vectors used to reduce torus statements to circle
// statements.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "eqmorse/errors.hpp"
#include "eqmorse/numeric.hpp"
#include "eqmorse/weight.hpp"

namespace eqmorse {

struct LatticeConfig {
  std::size_t max_rank = 4;
  std::int64_t max_search_norm = 64;
};

namespace detail {

inline std::vector<Integer> to_integers(const Weight& w) {
  std::vector<Integer> v;
  v.reserve(w.rank());
  for (auto c : w.coords()) v.emplace_back(static_cast<long>(c));
  return v;
}

inline RationalMatrix rows_of(std::span<const Weight> ws) {
  RationalMatrix m;
  m.reserve(ws.size());
  for (const auto& w : ws) m.push_back(to_rational(w));
  return m;
}

/// Fourier-Motzkin feasibility for the homogeneous strict system
/// { a . x > 0 : a in rows }. Returns an interior witness or nullopt.
inline std::optional<RationalVector> strict_cone_witness(const std::vector<std::vector<Integer>>& rows,
                                                         std::size_t dim) {
  using Row = std::vector<Integer>;
  std::vector<std::vector<Row>> stages;
  std::set<Row> current;
  for (const auto& r : rows) {
    auto p = primitive_direction(r);
    bool zero = std::all_of(p.begin(), p.end(), [](const Integer& z) { return z == 0; });
    if (zero) return std::nullopt;
    current.insert(std::move(p));
  }
  for (std::size_t j = 0; j < dim; ++j) {
    stages.emplace_back(current.begin(), current.end());
    std::vector<Row> pos, neg;
    std::set<Row> next;
    for (const auto& r : current) {
      if (r[j] > 0) {
        pos.push_back(r);
      } else if (r[j] < 0) {
        neg.push_back(r);
      } else {
        next.insert(r);
      }
    }
    if (!pos.empty() && !neg.empty()) {
      for (const auto& p : pos) {
        for (const auto& n : neg) {
          Row c(dim);
          Integer fp = -n[j];
          Integer fn = p[j];
          for (std::size_t k = 0; k < dim; ++k) c[k] = p[k] * fp + n[k] * fn;
          auto prim = primitive_direction(c);
          bool zero = std::all_of(prim.begin(), prim.end(), [](const Integer& z) { return z == 0; });
          if (zero) return std::nullopt;
          next.insert(std::move(prim));
        }
      }
    }
    current = std::move(next);
  }
  if (!current.empty()) return std::nullopt;

  RationalVector x(dim, Rational(0));
  for (std::size_t jj = dim; jj-- > 0;) {
    std::optional<Rational> lo, hi;
    for (const auto& r : stages[jj]) {
      Rational rest = 0;
      for (std::size_t k = jj + 1; k < dim; ++k) rest += x[k] * r[k];
      if (r[jj] == 0) continue;
      Rational bound = -rest / Rational(r[jj]);
      if (r[jj] > 0) {
        if (!lo || bound > *lo) lo = bound;
      } else {
        if (!hi || bound < *hi) hi = bound;
      }
    }
    if (!lo && !hi) {
      x[jj] = 0;
    } else if (lo && !hi) {
      x[jj] = Rational(floor_of(*lo) + 1);
    } else if (!lo && hi) {
      x[jj] = Rational(ceil_of(*hi) - 1);
    } else {
      Rational cand(floor_of(*lo) + 1);
      x[jj] = cand < *hi ? cand : (*lo + *hi) / 2;
    }
  }
  return x;
}

template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(std::span<const std::size_t>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// An action chamber: an open polyhedral cone cut out by the arrangement
/// walls. Stored as a canonical interior sample point plus the signs of the
/// arrangement weights on it; the closed cone's extreme rays are derived once
/// at construction.
class Chamber {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  /// `oriented_walls` are distinct primitive normals, each oriented to pair
  /// positively with the chamber. `arrangement` is the original weight list
  /// whose signs make up the sign vector.
  Chamber(std::size_t id, std::size_t rank, std::vector<Weight> oriented_walls,
          std::span<const Weight> arrangement)
      : id_(id), rank_(rank), walls_(std::move(oriented_walls)) {
    std::sort(walls_.begin(), walls_.end());
    compute_geometry();
    for (const auto& w : arrangement) {
      int s = sign_of(pairing(w, sample_point_));
      if (s == 0) throw Error(ErrorCode::WeightOnWall, "weight " + to_string(w) + " on chamber wall");
      sign_vector_.push_back(s);
    }
  }

  std::size_t id() const noexcept { return id_; }
  std::size_t rank() const noexcept { return rank_; }
  const RationalVector& sample_point() const noexcept { return sample_point_; }
  const std::vector<int>& sign_vector() const noexcept { return sign_vector_; }
  const std::vector<Weight>& walls() const noexcept { return walls_; }
  /// Primitive lattice vector on the sample-point ray; pairing with it is the
  /// depth functional of truncation windows.
  const Weight& direction() const noexcept { return direction_; }
  const std::vector<Weight>& extreme_rays() const noexcept { return rays_; }
  const std::vector<Weight>& lineality() const noexcept { return lineality_; }

  Integer level(const Weight& xi) const { return pairing(xi, direction_); }

  /// Sign of <lambda, p> for the sample point p; zero means lambda is a wall.
  int side(const Weight& lambda) const { return sign_of(pairing(lambda, sample_point_)); }

  /// True iff the lattice vector v lies in the open chamber.
  bool contains(const Weight& v) const {
    if (v.rank() != rank_) throw Error(ErrorCode::RankMismatch, "vector rank mismatch");
    for (const auto& w : walls_) {
      if (pairing(w, v) <= 0) return false;
    }
    return true;
  }

  bool same_cone(const Chamber& o) const { return rank_ == o.rank_ && walls_ == o.walls_; }

 private:
  void compute_geometry() {
    for (const auto& w : walls_) {
      if (w.rank() != rank_) throw Error(ErrorCode::RankMismatch, "wall rank mismatch");
    }
    RationalMatrix wall_rows = detail::rows_of(walls_);
    RationalMatrix lin = linalg::nullspace(wall_rows, rank_);
    for (const auto& b : lin) lineality_.push_back(Weight::from_integers(primitive_direction(b)));
    std::size_t d = walls_.empty() ? 0 : linalg::rank(wall_rows, rank_);

    std::set<Weight> rays;
    if (d > 0) {
      detail::for_each_subset(walls_.size(), d - 1, [&](std::span<const std::size_t> idx) {
        RationalMatrix m;
        for (auto i : idx) m.push_back(to_rational(walls_[i]));
        for (const auto& l : lineality_) m.push_back(to_rational(l));
        RationalMatrix ns = linalg::nullspace(m, rank_);
        if (ns.size() != 1) return;
        Weight x = Weight::from_integers(primitive_direction(ns.front()));
        bool nonneg = true, nonpos = true;
        for (const auto& w : walls_) {
          int s = sign_of(pairing(w, x));
          if (s < 0) nonneg = false;
          if (s > 0) nonpos = false;
        }
        if (nonneg) {
          rays.insert(x);
        } else if (nonpos) {
          rays.insert(-x);
        }
      });
    }
    rays_.assign(rays.begin(), rays.end());

    sample_point_.assign(rank_, Rational(0));
    for (const auto& r : rays_) {
      for (std::size_t i = 0; i < rank_; ++i) sample_point_[i] += static_cast<long>(r[i]);
    }
    direction_ = Weight::from_integers(primitive_direction(sample_point_));
    for (const auto& w : walls_) {
      if (pairing(w, sample_point_) <= 0) {
        throw Error(ErrorCode::WeightOnWall, "walls do not bound an open chamber");
      }
    }
  }

  std::size_t id_;
  std::size_t rank_;
  std::vector<Weight> walls_;
  std::vector<Weight> rays_;
  std::vector<Weight> lineality_;
  RationalVector sample_point_;
  Weight direction_;
  std::vector<int> sign_vector_;
};

using ChamberRef = std::shared_ptr<const Chamber>;

namespace detail {

inline std::vector<Weight> distinct_normals(std::span<const Weight> weights, std::size_t rank) {
  std::vector<Weight> normals;
  std::set<Weight> seen;
  for (const auto& w : weights) {
    if (w.rank() != rank) {
      throw Error(ErrorCode::RankMismatch, "weight " + to_string(w) + " has rank " +
                                               std::to_string(w.rank()) + ", expected " +
                                               std::to_string(rank));
    }
    if (w.is_zero()) throw Error(ErrorCode::ZeroWeight, "zero weight in arrangement");
    Weight h = hyperplane_normal(w);
    if (seen.insert(h).second) normals.push_back(h);
  }
  return normals;
}

}  // namespace detail

/// All chambers of the arrangement of hyperplanes orthogonal to `weights`,
/// ordered by sign vector on the distinct normals (+ before -), ids 0..N-1.
inline std::vector<ChamberRef> enumerate_chambers(std::span<const Weight> weights, std::size_t rank,
                                                  const LatticeConfig& cfg = {}) {
  if (rank == 0) throw Error(ErrorCode::RankMismatch, "rank must be positive");
  if (rank > cfg.max_rank) {
    throw Error(ErrorCode::RankTooLarge,
                "rank " + std::to_string(rank) + " exceeds maximum " + std::to_string(cfg.max_rank));
  }
  auto normals = detail::distinct_normals(weights, rank);

  struct Region {
    std::vector<int> signs;
    std::optional<RationalVector> witness;
  };
  std::vector<Region> regions{Region{}};
  for (std::size_t i = 0; i < normals.size(); ++i) {
    std::vector<Region> next;
    for (const auto& reg : regions) {
      for (int s : {+1, -1}) {
        if (reg.witness && sign_of(pairing(normals[i], *reg.witness)) == s) {
          Region r{reg.signs, reg.witness};
          r.signs.push_back(s);
          next.push_back(std::move(r));
          continue;
        }
        std::vector<std::vector<Integer>> rows;
        for (std::size_t j = 0; j < i; ++j) rows.push_back(detail::to_integers(reg.signs[j] * normals[j]));
        rows.push_back(detail::to_integers(s * normals[i]));
        auto w = detail::strict_cone_witness(rows, rank);
        if (!w) continue;
        Region r{reg.signs, std::move(w)};
        r.signs.push_back(s);
        next.push_back(std::move(r));
      }
    }
    regions = std::move(next);
  }

  std::sort(regions.begin(), regions.end(), [](const Region& a, const Region& b) {
    for (std::size_t i = 0; i < a.signs.size(); ++i) {
      if (a.signs[i] != b.signs[i]) return a.signs[i] > b.signs[i];
    }
    return false;
  });

  std::vector<ChamberRef> out;
  out.reserve(regions.size());
  for (std::size_t id = 0; id < regions.size(); ++id) {
    std::vector<Weight> walls;
    for (std::size_t j = 0; j < normals.size(); ++j) walls.push_back(regions[id].signs[j] * normals[j]);
    out.push_back(std::make_shared<const Chamber>(id, rank, std::move(walls), weights));
  }
  return out;
}

/// The chamber of the arrangement containing `point` (which must avoid every
/// wall).
inline ChamberRef chamber_containing(std::span<const Weight> weights, const RationalVector& point,
                                     std::size_t id = Chamber::npos) {
  auto normals = detail::distinct_normals(weights, point.size());
  std::vector<Weight> walls;
  for (const auto& h : normals) {
    int s = sign_of(pairing(h, point));
    if (s == 0) throw Error(ErrorCode::WeightOnWall, "point " + to_string(point) + " lies on a wall");
    walls.push_back(s * h);
  }
  return std::make_shared<const Chamber>(id, point.size(), std::move(walls), weights);
}

/// Lookup by membership among enumerated chambers; nullptr when absent.
inline ChamberRef find_chamber(std::span<const ChamberRef> chambers, const Weight& v) {
  for (const auto& c : chambers) {
    if (c->contains(v)) return c;
  }
  return nullptr;
}

/// -C among the enumerated chambers.
inline ChamberRef opposite(std::span<const ChamberRef> chambers, const Chamber& c) {
  for (const auto& o : chambers) {
    if (o->sign_vector().size() != c.sign_vector().size()) continue;
    bool neg = true;
    for (std::size_t i = 0; i < c.sign_vector().size(); ++i) {
      if (o->sign_vector()[i] != -c.sign_vector()[i]) {
        neg = false;
        break;
      }
    }
    if (neg && o->walls().size() == c.walls().size()) return o;
  }
  return nullptr;
}

/// The two chambers of a rank-one torus: R+ (sign +1) and R- (sign -1).
inline ChamberRef rank_one_chamber(int sign) {
  static const std::vector<Weight> unit{Weight{1}};
  return std::make_shared<const Chamber>(sign > 0 ? 0 : 1, 1, std::vector<Weight>{Weight{sign > 0 ? 1 : -1}},
                                         unit);
}

enum class ConePosition { strictly_inside, on_boundary, outside };

inline const char* to_string(ConePosition p) {
  switch (p) {
    case ConePosition::strictly_inside: return "strictly_inside";
    case ConePosition::on_boundary: return "on_boundary";
    case ConePosition::outside: return "outside";
  }
  return "?";
}

/// Position of xi relative to the closed dual cone of the chamber, decided
/// exactly from the extreme rays (and lineality) of the closed chamber.
inline ConePosition dual_cone_contains(const Chamber& c, const Weight& xi) {
  if (xi.rank() != c.rank()) throw Error(ErrorCode::RankMismatch, "xi rank mismatch");
  for (const auto& l : c.lineality()) {
    if (pairing(xi, l) != 0) return ConePosition::outside;
  }
  bool all_positive = c.lineality().empty();
  for (const auto& r : c.extreme_rays()) {
    int s = sign_of(pairing(xi, r));
    if (s < 0) return ConePosition::outside;
    if (s == 0) all_positive = false;
  }
  if (c.extreme_rays().empty()) all_positive = false;
  return all_positive ? ConePosition::strictly_inside : ConePosition::on_boundary;
}

inline bool in_closed_dual_cone(const Chamber& c, const Weight& xi) {
  return dual_cone_contains(c, xi) != ConePosition::outside;
}

/// A lattice point lambda0 with every given point in lambda0 - closure(C*).
/// Prefers one of the points themselves when possible.
inline Weight cone_upper_bound(const Chamber& c, std::span<const Weight> points) {
  if (points.empty()) throw Error(ErrorCode::MissingData, "cone_upper_bound of an empty set");
  std::vector<Weight> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(), [&](const Weight& a, const Weight& b) {
    Integer la = c.level(a), lb = c.level(b);
    if (la != lb) return la > lb;
    return a < b;
  });
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (const auto& q : sorted) {
    bool ok = true;
    for (const auto& r : sorted) {
      if (!in_closed_dual_cone(c, q - r)) {
        ok = false;
        break;
      }
    }
    if (ok) return q;
  }
  const Weight& top = sorted.front();
  for (const auto& l : c.lineality()) {
    for (const auto& q : sorted) {
      if (pairing(q - top, l) != 0) {
        throw Error(ErrorCode::WindowMismatch, "points have no common upper bound in the chamber's cone");
      }
    }
  }
  Weight g = Weight::zero(c.rank());
  for (const auto& w : c.walls()) g += w;
  Integer m = 0;
  for (const auto& q : sorted) {
    for (const auto& r : c.extreme_rays()) {
      Integer need = ceil_div(-pairing(top - q, r), pairing(g, r));
      if (need > m) m = need;
    }
  }
  return top + to_int64(m) * g;
}

/// Signs chosen so that every polarized weight sign*lambda pairs positively
/// with the chamber; `index` counts the flipped weights.
struct Polarization {
  ChamberRef chamber;
  std::vector<Weight> weights;
  std::vector<int> signs;
  std::size_t index = 0;

  Weight polarized(std::size_t k) const { return signs[k] * weights[k]; }
};

inline Polarization polarize(const ChamberRef& chamber, std::span<const Weight> component_weights) {
  Polarization pol;
  pol.chamber = chamber;
  for (const auto& w : component_weights) {
    if (w.rank() != chamber->rank()) throw Error(ErrorCode::RankMismatch, "weight rank mismatch");
    int s = chamber->side(w);
    if (s == 0) {
      throw Error(ErrorCode::WeightOnWall,
                  "weight " + to_string(w) + " pairs to zero with chamber " + std::to_string(chamber->id()));
    }
    pol.weights.push_back(w);
    pol.signs.push_back(s);
    if (s < 0) ++pol.index;
  }
  return pol;
}

/// First v in the open chamber, by increasing max-norm then lexicographic
/// order, with <lambda - xi, v> != 0 for every other lambda in `window`.
inline Weight find_reduction_vector(const Chamber& c, const Weight& xi, std::span<const Weight> window,
                                    const LatticeConfig& cfg = {}) {
  const std::size_t r = c.rank();
  xi.check_rank(Weight::zero(r));
  // Only the line through each difference matters.
  std::set<std::vector<std::int64_t>> lines;
  for (const auto& l : window) {
    if (l == xi) continue;
    std::vector<std::int64_t> key = (l - xi).coords();
    std::int64_t g = 0;
    for (auto x : key) g = std::gcd(g, x);
    auto lead = std::find_if(key.begin(), key.end(), [](std::int64_t x) { return x != 0; });
    if (*lead < 0) g = -g;
    for (auto& x : key) x /= g;
    lines.insert(std::move(key));
  }
  std::vector<std::vector<std::int64_t>> diffs(lines.begin(), lines.end());
  std::vector<std::int64_t> v(r);
  for (std::int64_t n = 1; n <= cfg.max_search_norm; ++n) {
    std::fill(v.begin(), v.end(), -n);
    while (true) {
      bool on_shell = false;
      for (auto x : v) {
        if (x == n || x == -n) on_shell = true;
      }
      if (on_shell) {
        Weight cand(v);
        if (c.contains(cand)) {
          bool ok = true;
          for (const auto& d : diffs) {
            __int128 dot = 0;
            for (std::size_t i = 0; i < r; ++i) dot += static_cast<__int128>(d[i]) * v[i];
            if (dot == 0) {
              ok = false;
              break;
            }
          }
          if (ok) return cand;
        }
      }
      bool advanced = false;
      for (std::size_t i = r; i > 0 && !advanced; --i) {
        if (v[i - 1] < n) {
          ++v[i - 1];
          for (std::size_t j = i; j < r; ++j) v[j] = -n;
          advanced = true;
        }
      }
      if (!advanced) break;
    }
  }
  throw Error(ErrorCode::SearchBudgetExceeded,
              "no separating vector of max-norm <= " + std::to_string(cfg.max_search_norm));
}

}  // namespace eqmorse
