#pragma once

// Symplectic cuts of a circle action at the regular level 0: fixed-point
// bookkeeping of M+ and M-, Hodge gluing, prequantum lifting, and the
// Morse-type inequalities relating invariant quantizations of M+- and M0.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eqmorse/character_ring.hpp"
#include "eqmorse/errors.hpp"
#include "eqmorse/fixed_point_model.hpp"
#include "eqmorse/hodge_polynomial.hpp"
#include "eqmorse/hodge_tools.hpp"
#include "eqmorse/lattice_chambers.hpp"
#include "eqmorse/morse_engine.hpp"

namespace eqmorse {

/// Characters of H^k(M, O(L)), H^k(M+-, O(L+-)) and dimensions of
/// H^k(M0, O(L0)).
struct QuantizationData {
  MorsePolynomial m_char{1};
  MorsePolynomial plus_char{1};
  MorsePolynomial minus_char{1};
  std::vector<std::int64_t> reduced_dims;
};

struct CutScenario {
  std::string name;
  Scenario parent;
  Scenario plus;
  Scenario minus;
  HodgePolynomial reduced_hodge;
  int reduced_dim = 0;
  bool free_action = true;
  std::optional<QuantizationData> quantization;
};

inline constexpr const char* reduced_component_name = "M0";

/// Fixed-point data of M+ and M-. M0 is omitted when its Hodge polynomial is
/// zero (empty reduced space).
inline CutScenario build_cut_scenarios(const Scenario& parent, const HodgePolynomial& reduced_hodge,
                                       std::string name = {}) {
  if (parent.rank != 1) throw Error(ErrorCode::RankMismatch, "symplectic cuts need a circle action (rank 1)");
  if (parent.dim < 1) throw Error(ErrorCode::ValidationError, "cannot cut a zero-dimensional manifold");
  CutScenario cs;
  cs.name = name.empty() ? parent.name + "_cut" : std::move(name);
  cs.parent = parent;
  cs.reduced_hodge = reduced_hodge;
  cs.reduced_dim = parent.dim - 1;
  if (!reduced_hodge.is_zero() && reduced_hodge.dim() != cs.reduced_dim) {
    throw Error(ErrorCode::ValidationError, "reduced space must have dimension " + std::to_string(cs.reduced_dim));
  }

  auto side = [&](int sign) {
    Scenario s;
    s.name = parent.name + (sign > 0 ? "+" : "-");
    s.rank = 1;
    s.dim = parent.dim;
    s.depth = parent.depth;
    s.e_rank = parent.e_rank;
    return s;
  };
  cs.plus = side(+1);
  cs.minus = side(-1);

  Integer e_total = 1;
  for (const auto& c : parent.components) {
    if (!c.moment) throw Error(ErrorCode::MissingData, "component '" + c.name + "' has no moment value");
    if (*c.moment == 0) {
      throw Error(ErrorCode::SingularLevel, "component '" + c.name + "' lies on the cut level 0");
    }
    (*c.moment > 0 ? cs.plus : cs.minus).components.push_back(c);
    if (!c.e_character.window()) e_total = c.e_character.total();
  }
  if (!reduced_hodge.is_zero()) {
    for (int sign : {+1, -1}) {
      FixedComponent m0;
      m0.name = reduced_component_name;
      m0.dim = cs.reduced_dim;
      m0.weights = {Weight{sign > 0 ? -1 : 1}};
      m0.hodge = reduced_hodge;
      m0.e_character = CharacterSeries::monomial(Weight{0}, e_total);
      m0.moment = Rational(0);
      (sign > 0 ? cs.plus : cs.minus).components.push_back(std::move(m0));
    }
  }
  return cs;
}

// ---------------------------------------------------------------------------
// Gluing of Hodge polynomials

struct GlueReport {
  HodgePolynomial parent;
  HodgePolynomial plus;
  HodgePolynomial minus;
  HodgePolynomial residual;  // P(M+) + P(M-) - P(M) - (1 + st) P(M0)
  std::vector<std::int64_t> h0k_parent;
  std::vector<std::int64_t> h0k_reduced;
  bool glue_holds = false;
  bool corollary_holds = false;

  bool passed() const { return glue_holds && corollary_holds; }
};

inline GlueReport glue_check(const CutScenario& cs) {
  ChamberRef plus = rank_one_chamber(+1);
  GlueReport rep;
  rep.parent = assemble_hodge_raw(cs.parent, plus);
  rep.plus = cs.plus.components.empty() ? HodgePolynomial(cs.parent.dim) : assemble_hodge_raw(cs.plus, plus);
  rep.minus = cs.minus.components.empty() ? HodgePolynomial(cs.parent.dim) : assemble_hodge_raw(cs.minus, plus);
  rep.residual = rep.plus + rep.minus - rep.parent - cs.reduced_hodge.times_one_plus_st();
  rep.glue_holds = rep.residual.is_zero();
  rep.h0k_parent = rep.parent.restrict_s_zero();
  rep.h0k_reduced = cs.reduced_hodge.restrict_s_zero();
  rep.corollary_holds = rep.h0k_parent == rep.h0k_reduced;
  return rep;
}

// ---------------------------------------------------------------------------
// Prequantum lifting

struct LiftReport {
  bool liftable = false;       // every moment value is an integer
  bool consistent = true;      // integrality is all-or-nothing and values agree mod 1
  std::optional<Rational> shift;  // subtract this from every value to make them integral
  std::vector<std::int64_t> fiber_weights;
};

inline LiftReport prequantum_lift_check(const std::vector<Rational>& moments) {
  LiftReport rep;
  std::size_t integral = 0;
  for (const auto& m : moments) {
    if (m.get_den() == 1) ++integral;
  }
  if (integral == moments.size()) {
    rep.liftable = true;
    for (const auto& m : moments) rep.fiber_weights.push_back(to_int64(m.get_num()));
    return rep;
  }
  if (integral > 0) {
    rep.consistent = false;
    return rep;
  }
  Rational frac = moments.front() - Rational(floor_of(moments.front()));
  for (const auto& m : moments) {
    Rational d = m - moments.front();
    if (d.get_den() != 1) rep.consistent = false;
  }
  if (rep.consistent) rep.shift = frac;
  return rep;
}

inline LiftReport prequantum_lift_check(const Scenario& s) {
  std::vector<Rational> ms;
  for (const auto& c : s.components) {
    if (!c.moment) throw Error(ErrorCode::MissingData, "component '" + c.name + "' has no moment value");
    ms.push_back(*c.moment);
  }
  return prequantum_lift_check(ms);
}

/// Same fixed-point data with E replaced by the prequantum line bundle, whose
/// fiber weight over each component is its moment value.
inline Scenario prequantized(const Scenario& s, const MorsePolynomial* cohomology) {
  auto lift = prequantum_lift_check(s);
  if (!lift.liftable) throw Error(ErrorCode::ValidationError, "moment values of '" + s.name + "' are not integral");
  Scenario out = s;
  out.e_rank = 1;
  for (std::size_t i = 0; i < out.components.size(); ++i) {
    out.components[i].e_character = CharacterSeries::monomial(Weight{lift.fiber_weights[i]});
    out.components[i].overrides.clear();
  }
  out.m_cohomology.reset();
  if (cohomology) out.m_cohomology = *cohomology;
  return out;
}

// ---------------------------------------------------------------------------
// Quantization inequalities

namespace detail {

/// Integer polynomial division by (1 + t): returns quotient, sets remainder.
inline std::vector<Integer> divide_one_plus_t(const std::vector<Integer>& p, Integer& remainder) {
  if (p.empty()) {
    remainder = 0;
    return {};
  }
  std::vector<Integer> q(p.size() - 1);
  if (!q.empty()) {
    q.back() = p.back();
    for (std::size_t k = q.size() - 1; k >= 1; --k) q[k - 1] = p[k] - q[k];
  }
  remainder = q.empty() ? p[0] : p[0] - q[0];
  while (!q.empty() && q.back() == 0) q.pop_back();
  return q;
}

inline std::vector<Integer> invariant_dims(const MorsePolynomial& p) {
  std::vector<Integer> out;
  for (const auto& c : p.coeffs()) out.push_back(c.mult_at(Weight{0}));
  return out;
}

inline Integer alternating(const std::vector<Integer>& v) {
  Integer s = 0;
  for (std::size_t k = 0; k < v.size(); ++k) s += k % 2 ? -v[k] : v[k];
  return s;
}

}  // namespace detail

struct QuantizationSide {
  std::vector<Integer> invariant;  // dim H^k(M+-, O(L+-))^{S^1}
  std::vector<Integer> q;          // Q^+-_0
  Integer remainder;
  bool nonneg = false;

  bool passed() const { return nonneg && remainder == 0; }
};

struct QuantizationReport {
  QuantizationSide plus;
  QuantizationSide minus;
  std::vector<Integer> reduced;            // dim H^k(M0, O(L0))
  std::vector<Integer> invariant_parent;   // dim H^k(M, O(L))^{S^1}
  Integer euler_plus, euler_minus, euler_reduced, euler_parent;
  bool com_holds = false;
  bool fiber_weights_match = true;  // informational

  bool passed() const { return plus.passed() && minus.passed() && com_holds; }
};

inline QuantizationReport quantization_morse_check(const CutScenario& cs) {
  if (!cs.quantization) throw Error(ErrorCode::MissingQuantizationData, "cut '" + cs.name + "' has no quantization data");
  const auto& qd = *cs.quantization;
  QuantizationReport rep;
  for (auto d : qd.reduced_dims) rep.reduced.emplace_back(static_cast<long>(d));
  auto side = [&](const MorsePolynomial& chars) {
    QuantizationSide s;
    s.invariant = detail::invariant_dims(chars);
    std::vector<Integer> diff(std::max(rep.reduced.size(), s.invariant.size()), Integer(0));
    for (std::size_t k = 0; k < rep.reduced.size(); ++k) diff[k] += rep.reduced[k];
    for (std::size_t k = 0; k < s.invariant.size(); ++k) diff[k] -= s.invariant[k];
    s.q = detail::divide_one_plus_t(diff, s.remainder);
    s.nonneg = std::all_of(s.q.begin(), s.q.end(), [](const Integer& z) { return z >= 0; });
    return s;
  };
  rep.plus = side(qd.plus_char);
  rep.minus = side(qd.minus_char);
  rep.invariant_parent = detail::invariant_dims(qd.m_char);
  rep.euler_plus = detail::alternating(rep.plus.invariant);
  rep.euler_minus = detail::alternating(rep.minus.invariant);
  rep.euler_reduced = detail::alternating(rep.reduced);
  rep.euler_parent = detail::alternating(rep.invariant_parent);
  rep.com_holds = rep.euler_plus == rep.euler_reduced && rep.euler_minus == rep.euler_reduced &&
                  rep.euler_parent == rep.euler_reduced;
  auto lift = prequantum_lift_check(cs.parent);
  rep.fiber_weights_match = lift.liftable;
  return rep;
}

/// Diagnostic for the conjectural Mayer-Vietoris relation
///   char H(M) + dims H(M0) = char H(M+) + char H(M-) + (1 + t) Q,
/// with 0 <= Q <= dims H(M0). Never gates a run.
struct MayerVietorisReport {
  static constexpr const char* label = "CONJECTURE DIAGNOSTIC";
  MorsePolynomial q{1};
  CharacterSeries remainder{1};
  bool remainder_zero = false;
  bool nonneg = false;
  bool bounded = false;

  bool consistent() const { return remainder_zero && nonneg && bounded; }
};

inline MayerVietorisReport mayer_vietoris_diagnostic(const CutScenario& cs) {
  if (!cs.quantization) throw Error(ErrorCode::MissingData, "cut '" + cs.name + "' has no quantization characters");
  const auto& qd = *cs.quantization;
  MorsePolynomial reduced(1);
  for (std::size_t k = 0; k < qd.reduced_dims.size(); ++k) {
    reduced.set(k, CharacterSeries::monomial(Weight{0}, static_cast<long>(qd.reduced_dims[k])));
  }
  auto div = poly_divide_one_plus_t(qd.m_char + reduced - qd.plus_char - qd.minus_char);
  MayerVietorisReport rep;
  rep.q = div.quotient;
  rep.remainder = div.remainder;
  rep.remainder_zero = div.remainder.is_zero();
  rep.nonneg = !is_nonneg(rep.q).has_value();
  rep.bounded = !is_nonneg(reduced - rep.q).has_value();
  return rep;
}

/// Strong inequalities on M, M+ and M- with E the prequantum bundle, when the
/// quantization characters are available (the route through which the
/// invariant inequalities are derived).
inline std::vector<MorseReport> prequantum_morse_reports(const CutScenario& cs) {
  if (!cs.quantization) throw Error(ErrorCode::MissingQuantizationData, "cut '" + cs.name + "' has no quantization data");
  std::vector<MorseReport> out;
  ChamberRef plus = rank_one_chamber(+1);
  out.push_back(verify_strong(prequantized(cs.parent, &cs.quantization->m_char), plus));
  if (!cs.plus.components.empty()) out.push_back(verify_strong(prequantized(cs.plus, &cs.quantization->plus_char), plus));
  if (!cs.minus.components.empty()) {
    out.push_back(verify_strong(prequantized(cs.minus, &cs.quantization->minus_char), plus));
  }
  return out;
}

}  // namespace eqmorse
