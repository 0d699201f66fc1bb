#pragma once

// Both sides of the strong equivariant holomorphic Morse inequalities, the
// (1+t) quotient certificate, weak inequalities, the t = -1 Lefschetz
// specialization, and reduction from a torus to a circle subgroup.

#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "eqmorse/character_ring.hpp"
#include "eqmorse/errors.hpp"
#include "eqmorse/fixed_point_model.hpp"
#include "eqmorse/lattice_chambers.hpp"

namespace eqmorse {

/// Thread-safe memo of left-hand sides keyed by (scenario hash, chamber id,
/// depth). Owned by the caller; chambers without an id are not cached.
class LhsCache {
 public:
  using Key = std::tuple<std::size_t, std::size_t, std::int64_t>;

  std::optional<MorsePolynomial> find(const Key& k) const {
    std::lock_guard lock(mu_);
    auto it = entries_.find(k);
    if (it == entries_.end()) return std::nullopt;
    ++hits_;
    return it->second;
  }

  void store(const Key& k, const MorsePolynomial& p) {
    std::lock_guard lock(mu_);
    entries_.emplace(k, p);
  }

  std::size_t size() const {
    std::lock_guard lock(mu_);
    return entries_.size();
  }

  std::size_t hits() const {
    std::lock_guard lock(mu_);
    return hits_;
  }

 private:
  mutable std::mutex mu_;
  std::map<Key, MorsePolynomial> entries_;
  mutable std::size_t hits_ = 0;
};

/// Override for the chamber, if the component supplies one.
inline const CohomologyOverride* find_override(const FixedComponent& c, const Chamber& chamber) {
  for (const auto& o : c.overrides) {
    if (chamber.contains(o.direction)) return &o;
  }
  return nullptr;
}

/// sum_k t^k char H^k(F, O(K^C(N) (x) E)) for one component.
inline MorsePolynomial component_cohomology(const FixedComponent& c, const Polarization& pol, std::int64_t depth) {
  const std::size_t r = c.e_character.rank();
  MorsePolynomial out(r);
  if (const auto* o = find_override(c, *pol.chamber)) {
    if (o->depth < depth) {
      throw Error(ErrorCode::WindowTooShallow, "cohomology override of '" + c.name + "' has depth " +
                                                   std::to_string(o->depth) + " < " + std::to_string(depth));
    }
    Window full{pol.chamber, o->anchor, o->depth};
    Window cut{pol.chamber, o->anchor, depth};
    for (int k = 0; k <= c.dim; ++k) {
      TermMap t = static_cast<std::size_t>(k) < o->degrees.size() ? o->degrees[k] : TermMap{};
      out.set(k, CharacterSeries::from_terms(r, std::move(t), full).truncated(cut));
    }
    return out;
  }
  CharacterSeries fiber = kc_character(c, pol, depth);
  for (int k = 0; k <= c.dim; ++k) out.set(k, fiber.scaled(c.hodge.at(0, k)));
  return out;
}

/// Left-hand side of the strong inequalities for the chamber.
inline MorsePolynomial strong_lhs(const Scenario& s, const ChamberRef& chamber, std::int64_t depth,
                                  LhsCache* cache = nullptr) {
  if (s.components.empty()) throw Error(ErrorCode::ValidationError, "empty fixed-point set");
  if (chamber->rank() != s.rank) throw Error(ErrorCode::RankMismatch, "chamber rank differs from scenario rank");
  std::optional<LhsCache::Key> key;
  if (cache && chamber->id() != Chamber::npos) {
    key = LhsCache::Key{scenario_hash(s), chamber->id(), depth};
    if (auto hit = cache->find(*key)) return *hit;
  }
  MorsePolynomial lhs(s.rank);
  for (const auto& c : s.components) {
    auto pol = polarize(chamber, c.weights);
    lhs = lhs + component_cohomology(c, pol, depth).shifted(pol.index);
  }
  if (key) cache->store(*key, lhs);
  return lhs;
}

inline MorsePolynomial strong_lhs(const Scenario& s, const ChamberRef& chamber, LhsCache* cache = nullptr) {
  return strong_lhs(s, chamber, s.depth, cache);
}

struct MorseReport {
  std::size_t chamber_id = Chamber::npos;
  std::optional<Window> window;
  MorsePolynomial lhs;
  MorsePolynomial rhs;
  MorsePolynomial q_poly;
  CharacterSeries remainder;
  bool nonneg = false;
  bool remainder_zero = false;
  std::optional<Violation> first_violation;

  bool passed() const { return nonneg && remainder_zero; }
};

/// Checks lhs - rhs = (1 + t) Q with Q >= 0 on a given pair of sides.
inline MorseReport compare_sides(std::size_t chamber_id, MorsePolynomial lhs, MorsePolynomial rhs) {
  MorseReport rep;
  rep.chamber_id = chamber_id;
  rep.window = common_window(lhs);
  if (rep.window) {
    Integer floor = rep.window->floor();
    for (std::size_t k = 0; k < rhs.size(); ++k) {
      for (const auto& [w, m] : rhs.coeffs()[k].terms()) {
        if (rep.window->level(w) < floor) {
          throw Error(ErrorCode::WindowTooShallow, "cohomology weight " + to_string(w) + " in degree " +
                                                       std::to_string(k) + " lies below the window");
        }
      }
    }
  }
  auto div = poly_divide_one_plus_t(lhs - rhs);
  rep.lhs = std::move(lhs);
  rep.rhs = std::move(rhs);
  rep.q_poly = std::move(div.quotient);
  rep.remainder = std::move(div.remainder);
  rep.first_violation = is_nonneg(rep.q_poly);
  rep.nonneg = !rep.first_violation.has_value();
  rep.remainder_zero = rep.remainder.is_zero();
  return rep;
}

inline MorseReport verify_strong(const Scenario& s, const ChamberRef& chamber, std::int64_t depth,
                                 LhsCache* cache = nullptr) {
  if (!s.m_cohomology) {
    throw Error(ErrorCode::MissingData, "scenario '" + s.name + "' has no cohomology of M");
  }
  return compare_sides(chamber->id(), strong_lhs(s, chamber, depth, cache), *s.m_cohomology);
}

inline MorseReport verify_strong(const Scenario& s, const ChamberRef& chamber, LhsCache* cache = nullptr) {
  return verify_strong(s, chamber, s.depth, cache);
}

struct WeakRow {
  std::size_t degree = 0;
  bool holds = true;
  std::optional<Weight> violation;
};

/// char H^k(M) <= sum_r char H^{k - nu_r}(F_r, ...), degree by degree.
inline std::vector<WeakRow> verify_weak(const MorseReport& rep) {
  std::vector<WeakRow> rows;
  const std::size_t n = std::max(rep.lhs.size(), rep.rhs.size());
  for (std::size_t k = 0; k < n; ++k) {
    WeakRow row;
    row.degree = k;
    row.violation = first_negative(rep.lhs.coeff(k) - rep.rhs.coeff(k));
    row.holds = !row.violation.has_value();
    rows.push_back(std::move(row));
  }
  return rows;
}

struct LefschetzChamber {
  std::size_t chamber_id = 0;
  CharacterSeries specialized_lhs;
  CharacterSeries residual;
  bool matches = false;
};

struct LefschetzReport {
  std::vector<LefschetzChamber> chambers;
  bool chamber_independent = true;
  std::optional<std::tuple<std::size_t, std::size_t, Weight>> cross_disagreement;

  bool passed() const {
    if (!chamber_independent) return false;
    for (const auto& c : chambers) {
      if (!c.matches) return false;
    }
    return true;
  }
};

/// t = -1 specialization: fixed-point side equals the Euler character of M
/// in every chamber, and the fixed-point side does not depend on the chamber.
inline LefschetzReport lefschetz_check(const Scenario& s, const std::vector<ChamberRef>& chambers, std::int64_t depth,
                                       LhsCache* cache = nullptr) {
  if (!s.m_cohomology) throw Error(ErrorCode::MissingData, "scenario '" + s.name + "' has no cohomology of M");
  LefschetzReport rep;
  CharacterSeries euler = specialize_t(*s.m_cohomology, -1);
  for (const auto& ch : chambers) {
    LefschetzChamber row;
    row.chamber_id = ch->id();
    row.specialized_lhs = specialize_t(strong_lhs(s, ch, depth, cache), -1);
    row.residual = row.specialized_lhs - euler;
    row.matches = row.residual.is_zero();
    rep.chambers.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < rep.chambers.size() && !rep.cross_disagreement; ++i) {
    for (std::size_t j = i + 1; j < rep.chambers.size(); ++j) {
      auto d = first_disagreement(rep.chambers[i].specialized_lhs, rep.chambers[j].specialized_lhs);
      if (d) {
        rep.chamber_independent = false;
        rep.cross_disagreement = std::make_tuple(rep.chambers[i].chamber_id, rep.chambers[j].chamber_id, *d);
        break;
      }
    }
  }
  return rep;
}

inline LefschetzReport lefschetz_check(const Scenario& s, const std::vector<ChamberRef>& chambers,
                                       LhsCache* cache = nullptr) {
  return lefschetz_check(s, chambers, s.depth, cache);
}

// ---------------------------------------------------------------------------
// Reduction to the circle generated by v

namespace detail {

/// xi -> <xi, v> for a series truncated in a chamber containing v or -v.
inline CharacterSeries push_forward_either(const CharacterSeries& a, const Weight& v) {
  if (!a.window() || a.window()->chamber->contains(v)) return push_forward(a, v);
  CharacterSeries b = push_forward(a, -v);
  TermMap t;
  for (const auto& [w, m] : b.terms()) t[-w] = m;
  Window out{rank_one_chamber(-1), -b.window()->anchor, b.window()->depth};
  return CharacterSeries::from_terms(1, std::move(t), out);
}

}  // namespace detail

/// Rank-one scenario for the circle subgroup generated by v.
inline Scenario circle_reduce(const Scenario& s, const Weight& v) {
  if (v.rank() != s.rank) throw Error(ErrorCode::RankMismatch, "reduction vector rank differs from scenario rank");
  Scenario out;
  out.name = s.name + "@" + to_string(v);
  out.rank = 1;
  out.dim = s.dim;
  out.depth = s.depth;
  out.m_hodge = s.m_hodge;
  out.e_rank = s.e_rank;
  for (const auto& c : s.components) {
    FixedComponent r;
    r.name = c.name;
    r.dim = c.dim;
    r.hodge = c.hodge;
    r.moment = c.moment;
    for (const auto& w : c.weights) {
      Integer p = pairing(w, v);
      if (p == 0) {
        throw Error(ErrorCode::WeightKilled, "weight " + to_string(w) + " of '" + c.name + "' is orthogonal to " +
                                                 to_string(v));
      }
      r.weights.push_back(Weight{to_int64(p)});
    }
    r.e_character = push_forward(c.e_character, v);
    auto ws = s.all_weights();
    for (const auto& o : c.overrides) {
      ChamberRef ch = chamber_containing(ws, to_rational(o.direction));
      int sign = ch->contains(v) ? 1 : (ch->contains(-v) ? -1 : 0);
      if (sign == 0) continue;
      Window w{ch, o.anchor, o.depth};
      CohomologyOverride ro;
      ro.direction = Weight{sign};
      ro.depth = -1;
      for (const auto& t : o.degrees) {
        auto pushed = detail::push_forward_either(CharacterSeries::from_terms(s.rank, t, w), v);
        ro.anchor = pushed.window()->anchor;
        ro.depth = pushed.window()->depth;
        ro.degrees.push_back(pushed.terms());
      }
      if (ro.depth < 0) {
        auto pushed = detail::push_forward_either(CharacterSeries::from_terms(s.rank, {}, w), v);
        ro.anchor = pushed.window()->anchor;
        ro.depth = pushed.window()->depth;
      }
      r.overrides.push_back(std::move(ro));
    }
    out.components.push_back(std::move(r));
  }
  if (s.m_cohomology) {
    MorsePolynomial m(1);
    for (std::size_t k = 0; k < s.m_cohomology->size(); ++k) m.set(k, push_forward(s.m_cohomology->coeffs()[k], v));
    out.m_cohomology = std::move(m);
  }
  return out;
}

struct ReductionCheck {
  Weight xi;
  Weight v;
  Weight anchor;             // lambda_0 of the torus window
  std::int64_t torus_depth = 0;
  std::int64_t circle_depth = 0;
  std::vector<Integer> torus_mults;   // per degree, mult at xi
  std::vector<Integer> circle_mults;  // per degree, mult at <xi, v>
  bool agree = false;
};

/// Compares mult_xi of the torus left-hand side with mult_<xi,v> of the
/// circle-reduced one, where v separates xi from every other support weight
/// that could share its pairing with v.
inline ReductionCheck reduction_check(const Scenario& s, const ChamberRef& chamber, const Weight& xi,
                                      const LatticeConfig& cfg = {}, int max_rounds = 8) {
  ReductionCheck out;
  out.xi = xi;
  std::int64_t depth = s.depth;
  for (int round = 0; round < max_rounds; ++round) {
    MorsePolynomial lhs = strong_lhs(s, chamber, depth);
    auto win = common_window(lhs);
    if (!win) throw Error(ErrorCode::Unsupported, "reduction check needs a truncated left-hand side");
    if (!in_closed_dual_cone(*chamber, win->anchor - xi)) {
      throw Error(ErrorCode::OutsideWindow, "weight " + to_string(xi) + " is not below the window anchor");
    }
    Integer gap = win->level(win->anchor) - win->level(xi);
    if (gap > depth) {
      depth = to_int64(gap);
      continue;
    }
    std::vector<Weight> points{xi};
    for (const auto& c : lhs.coeffs()) {
      for (const auto& [w, m] : c.terms()) points.push_back(w);
    }
    Weight v = find_reduction_vector(*chamber, xi, points, cfg);
    Integer c = pairing(win->anchor - xi, v);
    Rational rho = 0;
    for (const auto& a : chamber->walls()) {
      Rational q(pairing(a, chamber->direction()), pairing(a, v));
      if (q > rho) rho = q;
    }
    Integer need = ceil_of(rho * c);
    if (need > depth) {
      depth = to_int64(need);
      continue;
    }
    out.v = v;
    out.anchor = win->anchor;
    out.torus_depth = depth;
    for (const auto& coeff : lhs.coeffs()) out.torus_mults.push_back(coeff.mult_at(xi));

    Scenario circ = circle_reduce(s, v);
    ChamberRef plus = rank_one_chamber(+1);
    Weight target{to_int64(pairing(xi, v))};
    std::int64_t cdepth = to_int64(c);
    for (int tries = 0; tries < 4; ++tries) {
      MorsePolynomial cl = strong_lhs(circ, plus, cdepth);
      auto cw = common_window(cl);
      if (cw && !cw->contains(target)) {
        cdepth += to_int64(cw->floor() - cw->level(target));
        continue;
      }
      out.circle_depth = cdepth;
      out.circle_mults.clear();
      for (std::size_t k = 0; k < out.torus_mults.size(); ++k) out.circle_mults.push_back(cl.coeff(k).mult_at(target));
      for (std::size_t k = out.torus_mults.size(); k < cl.size(); ++k) {
        out.torus_mults.push_back(0);
        out.circle_mults.push_back(cl.coeff(k).mult_at(target));
      }
      out.agree = out.torus_mults == out.circle_mults;
      return out;
    }
    throw Error(ErrorCode::WindowTooShallow, "circle-side window did not reach the target weight");
  }
  throw Error(ErrorCode::SearchBudgetExceeded, "reduction depth did not stabilise");
}

}  // namespace eqmorse
