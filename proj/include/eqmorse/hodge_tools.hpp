#pragma once

// Hodge numbers of M from fixed-point data: P(M;s,t) = sum_r (st)^nu_r P(F_r;s,t).

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eqmorse/errors.hpp"
#include "eqmorse/fixed_point_model.hpp"
#include "eqmorse/hodge_polynomial.hpp"
#include "eqmorse/lattice_chambers.hpp"

namespace eqmorse {

/// Assembled polynomial without the symmetry re-check (residual work and
/// formal bookkeeping scenarios use this).
inline HodgePolynomial assemble_hodge_raw(const Scenario& s, const ChamberRef& chamber) {
  HodgePolynomial p(s.dim);
  for (const auto& c : s.components) {
    auto pol = polarize(chamber, c.weights);
    p = p + c.hodge.times_st_power(static_cast<int>(pol.index));
  }
  p.set_dim(s.dim);
  return p;
}

inline HodgePolynomial assemble_hodge(const Scenario& s, const ChamberRef& chamber) {
  HodgePolynomial p = assemble_hodge_raw(s, chamber);
  if (!p.symmetric() || !p.dual() || !p.in_range()) {
    throw Error(ErrorCode::SymmetryViolation, "assembled polynomial " + p.to_string() + " of '" + s.name +
                                                  "' violates Hodge symmetry or duality");
  }
  return p;
}

/// h^{k,k} = number of fixed points of polarizing index k.
inline std::map<int, std::int64_t> isolated_hodge_numbers(const Scenario& s, const ChamberRef& chamber) {
  std::map<int, std::int64_t> out;
  for (const auto& c : s.components) {
    if (c.dim != 0) throw Error(ErrorCode::NotAllIsolated, "component '" + c.name + "' is not a point");
    out[static_cast<int>(polarize(chamber, c.weights).index)] += 1;
  }
  return out;
}

struct ConsistencyReport {
  struct Pair {
    std::size_t chamber = 0;
    std::size_t opposite = 0;
    HodgePolynomial residual;
  };
  std::vector<Pair> pairs;              // P_C - P_{-C}
  std::vector<HodgePolynomial> assembled;  // one per chamber, in order
  bool pairs_ok = true;
  bool all_equal = true;

  bool passed() const { return pairs_ok && all_equal; }
};

/// Opposite-chamber identity and equality of the assembly across chambers.
inline ConsistencyReport chamber_consistency_check(const Scenario& s, const std::vector<ChamberRef>& chambers) {
  ConsistencyReport rep;
  for (const auto& c : chambers) rep.assembled.push_back(assemble_hodge_raw(s, c));
  for (std::size_t i = 0; i < chambers.size(); ++i) {
    auto opp = opposite(chambers, *chambers[i]);
    if (!opp) throw Error(ErrorCode::WindowMismatch, "chamber list is not closed under negation");
    if (opp->id() < chambers[i]->id()) continue;
    ConsistencyReport::Pair pr;
    pr.chamber = chambers[i]->id();
    pr.opposite = opp->id();
    pr.residual = rep.assembled[i] - assemble_hodge_raw(s, opp);
    if (!pr.residual.is_zero()) rep.pairs_ok = false;
    rep.pairs.push_back(std::move(pr));
  }
  for (const auto& p : rep.assembled) {
    if (!p.same_coeffs(rep.assembled.front())) rep.all_equal = false;
  }
  return rep;
}

struct ToddReport {
  std::string minimum;                  // the unique component with nu = 0
  std::vector<std::int64_t> h0k_manifold;
  std::vector<std::int64_t> h0k_component;
  std::int64_t todd_manifold = 0;
  std::int64_t todd_component = 0;
  bool passed = false;
};

/// h^{0,k}(M) = h^{0,k}(F) for the unique component of index zero.
inline ToddReport todd_restriction_check(const Scenario& s, const ChamberRef& chamber) {
  std::vector<const FixedComponent*> minima;
  for (const auto& c : s.components) {
    if (polarize(chamber, c.weights).index == 0) minima.push_back(&c);
  }
  if (minima.size() != 1) {
    throw Error(ErrorCode::MultipleMinima, std::to_string(minima.size()) + " components of index 0 in chamber " +
                                               std::to_string(chamber->id()) + " of '" + s.name + "'");
  }
  ToddReport rep;
  HodgePolynomial m = assemble_hodge_raw(s, chamber);
  rep.minimum = minima.front()->name;
  rep.h0k_manifold = m.restrict_s_zero();
  rep.h0k_component = minima.front()->hodge.restrict_s_zero();
  rep.todd_manifold = m.todd_genus();
  rep.todd_component = minima.front()->hodge.todd_genus();
  rep.passed = rep.h0k_manifold == rep.h0k_component && rep.todd_manifold == rep.todd_component;
  return rep;
}

/// h^{k,l} = 0 whenever |k - l| exceeds every component dimension.
inline bool carrell_lieberman_check(const HodgePolynomial& h, const std::vector<int>& component_dims) {
  int bound = component_dims.empty() ? 0 : *std::max_element(component_dims.begin(), component_dims.end());
  for (const auto& [key, v] : h.coeffs()) {
    if (std::abs(key.first - key.second) > bound && v != 0) return false;
  }
  return true;
}

inline std::vector<int> component_dims(const Scenario& s) {
  std::vector<int> d;
  for (const auto& c : s.components) d.push_back(c.dim);
  return d;
}

struct PerfectMorseReport {
  std::vector<std::int64_t> fixed_side;  // sum_r t^{2 nu_r} P(F_r; t, t)
  std::vector<std::int64_t> manifold;    // P(M; t, t)
  bool passed = false;
};

/// The s = t collapse. P(M) is the declared m_hodge when present, otherwise
/// the assembly in the opposite chamber, so the check is never circular.
inline PerfectMorseReport perfect_morse_check(const Scenario& s, const ChamberRef& chamber,
                                              const std::vector<ChamberRef>& chambers) {
  PerfectMorseReport rep;
  HodgePolynomial fixed(s.dim);
  for (const auto& c : s.components) {
    auto nu = static_cast<int>(polarize(chamber, c.weights).index);
    fixed = fixed + c.hodge.times_st_power(nu);
  }
  rep.fixed_side = fixed.diagonal();
  HodgePolynomial m;
  if (s.m_hodge) {
    m = *s.m_hodge;
  } else {
    auto opp = opposite(chambers, *chamber);
    if (!opp) throw Error(ErrorCode::MissingData, "no opposite chamber and no declared Hodge polynomial");
    m = assemble_hodge_raw(s, opp);
  }
  rep.manifold = m.diagonal();
  rep.passed = rep.fixed_side == rep.manifold;
  return rep;
}

}  // namespace eqmorse
