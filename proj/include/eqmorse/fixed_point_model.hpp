#pragma once

// Declarative fixed-point data and the fiberwise characters of the polarized
// symmetric tensor products over each fixed component.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "eqmorse/character_ring.hpp"
#include "eqmorse/errors.hpp"
#include "eqmorse/hodge_polynomial.hpp"
#include "eqmorse/lattice_chambers.hpp"
#include "eqmorse/weight.hpp"

namespace eqmorse {

/// Explicit characters of H^k(F, O(K^C(N) (x) E)) for one chamber, used when
/// the fiber-character-times-base-cohomology model is not exact. Applies to
/// the chamber containing `direction`.
struct CohomologyOverride {
  Weight direction;
  Weight anchor;
  std::int64_t depth = 0;
  std::vector<TermMap> degrees;
};

struct FixedComponent {
  std::string name;
  int dim = 0;
  std::vector<Weight> weights;
  HodgePolynomial hodge = HodgePolynomial::point();
  CharacterSeries e_character;  // finite character of E on a fiber
  std::optional<Rational> moment;
  std::vector<CohomologyOverride> overrides;
};

struct Scenario {
  std::string name;
  std::size_t rank = 1;
  int dim = 0;
  std::int64_t depth = 10;
  std::vector<FixedComponent> components;
  std::optional<MorsePolynomial> m_cohomology;  // sum t^k char H^k(M, O(E))
  std::optional<HodgePolynomial> m_hodge;       // P(M; s, t) when known
  std::optional<std::int64_t> e_rank;

  std::vector<Weight> all_weights() const {
    std::vector<Weight> out;
    for (const auto& c : components) out.insert(out.end(), c.weights.begin(), c.weights.end());
    return out;
  }
};

/// Fixed component with trivial E and no moment; the common case in tests.
inline FixedComponent make_component(std::string name, int dim, std::vector<Weight> weights,
                                     HodgePolynomial hodge, std::size_t rank) {
  FixedComponent c;
  c.name = std::move(name);
  c.dim = dim;
  c.weights = std::move(weights);
  c.hodge = std::move(hodge);
  c.e_character = CharacterSeries::monomial(Weight::zero(rank));
  return c;
}

inline std::vector<ChamberRef> scenario_chambers(const Scenario& s, const LatticeConfig& cfg = {}) {
  auto ws = s.all_weights();
  return enumerate_chambers(ws, s.rank, cfg);
}

// ---------------------------------------------------------------------------
// Validation

enum class Severity { error, warning };

struct Diagnostic {
  std::string code;
  Severity severity = Severity::error;
  std::string component;
  std::string message;
};

inline std::string to_string(const Diagnostic& d) {
  std::string s = std::string(d.severity == Severity::error ? "error " : "warning ") + d.code;
  if (!d.component.empty()) s += " [" + d.component + "]";
  return s + ": " + d.message;
}

inline bool has_errors(const std::vector<Diagnostic>& ds) {
  return std::any_of(ds.begin(), ds.end(), [](const Diagnostic& d) { return d.severity == Severity::error; });
}

namespace detail {

inline void check_hodge(const HodgePolynomial& h, const std::string& who, std::vector<Diagnostic>& out) {
  if (!h.in_range()) out.push_back({"HodgeOutOfRange", Severity::error, who, "h^{k,l} outside [0, dim]^2"});
  if (!h.nonnegative()) out.push_back({"NegativeHodge", Severity::error, who, "negative Hodge number"});
  if (!h.symmetric()) out.push_back({"HodgeSymmetryViolated", Severity::error, who, "h^{k,l} != h^{l,k}"});
  if (!h.dual()) out.push_back({"HodgeDualityViolated", Severity::error, who, "h^{k,l} != h^{n-k,n-l}"});
  if (h.at(0, 0) != 1) out.push_back({"HodgeNotConnected", Severity::error, who, "h^{0,0} must be 1"});
}

}  // namespace detail

/// All invariant checks; errors make the scenario unusable, warnings flag
/// modelling assumptions.
inline std::vector<Diagnostic> validate_scenario(const Scenario& s) {
  std::vector<Diagnostic> out;
  auto err = [&](std::string code, std::string who, std::string msg) {
    out.push_back({std::move(code), Severity::error, std::move(who), std::move(msg)});
  };
  if (s.rank == 0) err("RankMismatch", "", "rank must be positive");
  if (s.depth < 1) err("InvalidDepth", "", "depth must be at least 1");
  if (s.dim < 0) err("DimensionMismatch", "", "negative dimension");
  if (s.components.empty()) err("EmptyFixedSet", "", "the fixed-point set must be nonempty");

  std::set<std::string> names;
  std::set<Integer> e_totals;
  for (const auto& c : s.components) {
    if (!names.insert(c.name).second) err("DuplicateName", c.name, "component name repeated");
    if (c.dim < 0 || c.dim > s.dim) err("DimensionMismatch", c.name, "component dimension out of range");
    if (static_cast<std::size_t>(c.dim) + c.weights.size() != static_cast<std::size_t>(s.dim)) {
      err("DimensionMismatch", c.name,
          "dim " + std::to_string(c.dim) + " + " + std::to_string(c.weights.size()) + " weights != " +
              std::to_string(s.dim));
    }
    for (const auto& w : c.weights) {
      if (w.rank() != s.rank) {
        err("RankMismatch", c.name, "weight " + to_string(w) + " has rank " + std::to_string(w.rank()));
      } else if (w.is_zero()) {
        err("ZeroIsotropyWeight", c.name, "isotropy weight is zero");
      }
    }
    if (c.hodge.dim() != c.dim) {
      err("DimensionMismatch", c.name, "Hodge polynomial dimension differs from component dimension");
    }
    detail::check_hodge(c.hodge, c.name, out);
    if (c.e_character.rank() != s.rank) {
      err("RankMismatch", c.name, "E-character rank mismatch");
    } else if (c.e_character.window()) {
      err("ECharacterNotFinite", c.name, "E-character must be a finite character");
    } else {
      Integer total = 0;
      bool nonneg = true;
      for (const auto& [w, m] : c.e_character.terms()) {
        total += m;
        if (m < 0) nonneg = false;
      }
      if (!nonneg) err("NegativeECharacter", c.name, "E-character multiplicities must be nonnegative");
      if (total == 0) err("ERankMismatch", c.name, "E-character is empty");
      e_totals.insert(total);
      if (s.e_rank && total != *s.e_rank) {
        err("ERankMismatch", c.name, "E-character dimension " + total.get_str() + " != declared rank " +
                                         std::to_string(*s.e_rank));
      }
    }
    for (const auto& o : c.overrides) {
      if (o.direction.rank() != s.rank || o.anchor.rank() != s.rank) {
        err("RankMismatch", c.name, "cohomology override rank mismatch");
      }
      if (o.degrees.size() > static_cast<std::size_t>(c.dim) + 1) {
        err("DimensionMismatch", c.name, "cohomology override has degrees beyond the component dimension");
      }
      if (o.depth < 0) err("InvalidDepth", c.name, "negative override depth");
      for (const auto& t : o.degrees) {
        for (const auto& [w, m] : t) {
          if (w.rank() != s.rank) err("RankMismatch", c.name, "cohomology override weight rank mismatch");
        }
      }
    }
    if (c.dim > 0 && !c.weights.empty() && c.overrides.empty()) {
      out.push_back({"FactorizedCohomologyAssumed", Severity::warning, c.name,
                     "character of H^k modelled as fiber character times H^{0,k}(F)"});
    }
  }
  if (e_totals.size() > 1 && !s.e_rank) {
    err("ERankMismatch", "", "components disagree on the rank of E");
  }

  if (s.m_cohomology) {
    if (s.m_cohomology->rank() != s.rank) err("RankMismatch", "", "m_cohomology rank mismatch");
    if (s.m_cohomology->size() > static_cast<std::size_t>(s.dim) + 1) {
      err("DimensionMismatch", "", "m_cohomology degree exceeds dim");
    }
    for (const auto& c : s.m_cohomology->coeffs()) {
      if (c.window()) err("MCohomologyNotFinite", "", "m_cohomology coefficients must be finite");
    }
  }
  if (s.m_hodge) {
    if (s.m_hodge->dim() != s.dim) err("DimensionMismatch", "", "m_hodge dimension differs from dim");
    detail::check_hodge(*s.m_hodge, "M", out);
  }

  // Rank one: the minimum of the moment map is where every weight is
  // negative, the maximum where every weight is positive.
  bool all_moments = !s.components.empty() &&
                     std::all_of(s.components.begin(), s.components.end(),
                                 [](const FixedComponent& c) { return c.moment.has_value(); });
  if (s.rank == 1 && all_moments && s.components.size() > 1) {
    auto by_moment = [](const FixedComponent& a, const FixedComponent& b) { return *a.moment < *b.moment; };
    const auto& lo = *std::min_element(s.components.begin(), s.components.end(), by_moment);
    const auto& hi = *std::max_element(s.components.begin(), s.components.end(), by_moment);
    auto all_sign = [](const FixedComponent& c, int sign) {
      return std::all_of(c.weights.begin(), c.weights.end(), [&](const Weight& w) {
        return w.rank() == 1 && (sign > 0 ? w[0] > 0 : w[0] < 0);
      });
    };
    if (!all_sign(lo, -1) || !all_sign(hi, +1)) {
      out.push_back({"MomentOrderingInconsistent", Severity::warning, "",
                     "extremal moment values do not match the signs of the isotropy weights"});
    }
  }
  return out;
}

inline void require_valid(const Scenario& s) {
  auto ds = validate_scenario(s);
  if (!has_errors(ds)) return;
  std::string msg = "scenario '" + s.name + "' is invalid:";
  for (const auto& d : ds) {
    if (d.severity == Severity::error) msg += "\n  " + to_string(d);
  }
  throw Error(ErrorCode::ValidationError, msg);
}

// ---------------------------------------------------------------------------
// Characters of K^C(N) (x) E

namespace detail {

/// Enumerates -sum m_k mu_k with m_k >= lower_k and sum m_k level_k <= depth.
inline void enumerate_exponents(const std::vector<Weight>& mus, const std::vector<Integer>& levels,
                                const std::vector<int>& lower, std::size_t k, Weight acc, Integer budget,
                                TermMap& out) {
  if (k == mus.size()) {
    out[acc] += 1;
    return;
  }
  Weight w = acc;
  Integer used = 0;
  for (int i = 0; i < lower[k]; ++i) {
    w -= mus[k];
    used += levels[k];
  }
  while (used <= budget) {
    enumerate_exponents(mus, levels, lower, k + 1, w, budget - used, out);
    w -= mus[k];
    used += levels[k];
  }
}

/// Restricts a product with a finite E-character to depth D measured from
/// the anchor fixed by E's support.
inline CharacterSeries with_e_character(const CharacterSeries& fiber, const CharacterSeries& e,
                                        const ChamberRef& chamber, std::int64_t depth) {
  CharacterSeries prod = fiber * e;
  auto supp = support(e.terms());
  if (supp.empty()) return CharacterSeries::from_terms(fiber.rank(), {}, Window{chamber, Weight::zero(fiber.rank()), depth});
  Window w{chamber, cone_upper_bound(*chamber, supp), depth};
  return prod.truncated(w);
}

}  // namespace detail

/// Character of K^C(N_r) (x) E restricted to a fiber, expanded to `depth`.
inline CharacterSeries kc_character(const FixedComponent& c, const Polarization& pol, std::int64_t depth) {
  if (pol.weights != c.weights) throw Error(ErrorCode::RankMismatch, "polarization does not match component weights");
  if (depth < 0) throw Error(ErrorCode::WindowTooShallow, "negative depth");
  const std::size_t r = c.e_character.rank();
  if (c.weights.empty()) return c.e_character;
  const Chamber& ch = *pol.chamber;
  std::vector<Weight> mus;
  std::vector<Integer> levels;
  std::vector<int> lower;
  for (std::size_t k = 0; k < c.weights.size(); ++k) {
    mus.push_back(pol.polarized(k));
    levels.push_back(ch.level(mus.back()));
    lower.push_back(pol.signs[k] < 0 ? 1 : 0);
  }
  TermMap terms;
  detail::enumerate_exponents(mus, levels, lower, 0, Weight::zero(r), Integer(depth), terms);
  auto fiber = CharacterSeries::from_terms(r, std::move(terms), Window{pol.chamber, Weight::zero(r), depth});
  return detail::with_e_character(fiber, c.e_character, pol.chamber, depth);
}

/// Same character for an isolated point, assembled as a product of one
/// geometric series per weight.
inline CharacterSeries isolated_point_character(const FixedComponent& c, const Polarization& pol,
                                                std::int64_t depth) {
  if (c.dim != 0) throw Error(ErrorCode::NotIsolated, "component '" + c.name + "' has positive dimension");
  if (pol.weights != c.weights) throw Error(ErrorCode::RankMismatch, "polarization does not match component weights");
  const std::size_t r = c.e_character.rank();
  if (c.weights.empty()) return c.e_character;
  const Chamber& ch = *pol.chamber;
  Window w{pol.chamber, Weight::zero(r), depth};
  CharacterSeries acc = CharacterSeries::from_terms(r, {{Weight::zero(r), Integer(1)}}, w);
  for (std::size_t k = 0; k < c.weights.size(); ++k) {
    Weight mu = pol.polarized(k);
    Integer step = ch.level(mu);
    TermMap geo;
    Weight x = pol.signs[k] < 0 ? -mu : Weight::zero(r);
    Integer lvl = -ch.level(x);
    for (; lvl <= depth; lvl += step) {
      geo[x] += 1;
      x -= mu;
    }
    acc = acc * CharacterSeries::from_terms(r, std::move(geo), w);
  }
  return detail::with_e_character(acc, c.e_character, pol.chamber, depth);
}

// ---------------------------------------------------------------------------
// Canonical text form, used as a cache key and for change detection.

inline std::string canonical_string(const Scenario& s) {
  std::ostringstream os;
  auto terms = [&](const TermMap& t) {
    os << '{';
    for (const auto& [w, m] : t) os << to_string(w) << ':' << m.get_str() << ';';
    os << '}';
  };
  os << s.name << '|' << s.rank << '|' << s.dim << '|' << s.depth << '|';
  for (const auto& c : s.components) {
    os << '[' << c.name << '|' << c.dim << '|';
    for (const auto& w : c.weights) os << to_string(w);
    os << '|' << c.hodge.to_string() << '|';
    terms(c.e_character.terms());
    os << '|' << (c.moment ? to_string(*c.moment) : "-") << '|';
    for (const auto& o : c.overrides) {
      os << '<' << to_string(o.direction) << to_string(o.anchor) << o.depth;
      for (const auto& t : o.degrees) terms(t);
      os << '>';
    }
    os << ']';
  }
  if (s.m_cohomology) {
    for (const auto& c : s.m_cohomology->coeffs()) terms(c.terms());
  }
  if (s.m_hodge) os << '|' << s.m_hodge->to_string();
  if (s.e_rank) os << '|' << *s.e_rank;
  return os.str();
}

inline std::size_t scenario_hash(const Scenario& s) { return std::hash<std::string>{}(canonical_string(s)); }

}  // namespace eqmorse
