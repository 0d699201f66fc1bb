#pragma once

// Generators for the shipped verification scenarios: projective spaces with
// their standard torus actions, complex surfaces with circle actions (three
// families, by the shape of the extremal fixed components), and symplectic
// cuts of the sphere and of the ruled-surface family.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "eqmorse/cut_quant.hpp"
#include "eqmorse/errors.hpp"
#include "eqmorse/fixed_point_model.hpp"
#include "eqmorse/hodge_polynomial.hpp"

namespace eqmorse::corpus {

inline constexpr std::int64_t override_depth = 20;

/// h^0 of a line bundle of degree d on a genus-g curve, for the bundles used
/// here: trivial, negative, or multiples of a general effective divisor.
inline std::int64_t curve_h0(std::int64_t g, std::int64_t d) {
  if (d < 0) return 0;
  if (d == 0) return 1;
  return std::max<std::int64_t>(1, d + 1 - g);
}

inline std::int64_t curve_h1(std::int64_t g, std::int64_t d) { return curve_h0(g, d) - (d + 1 - g); }

/// Cohomology characters of a genus-g curve fixed by a circle, with normal
/// line bundle of degree `normal_degree` and weight `lambda`, for both
/// chambers of the circle.
inline std::vector<CohomologyOverride> curve_overrides(std::int64_t g, std::int64_t normal_degree,
                                                       std::int64_t lambda) {
  std::vector<CohomologyOverride> out;
  for (std::int64_t dir : {+1, -1}) {
    CohomologyOverride o;
    o.direction = Weight{dir};
    o.anchor = Weight{0};
    o.depth = override_depth;
    o.degrees.assign(2, TermMap{});
    const bool positive = lambda * dir > 0;
    const std::int64_t step = lambda < 0 ? -lambda : lambda;
    for (std::int64_t j = positive ? 0 : 1; j * step <= override_depth; ++j) {
      // K^C = sum_j (N*)^j when the weight is polarized positively, else sum_{j>=1} N^j.
      Weight w{positive ? -j * lambda : j * lambda};
      std::int64_t deg = positive ? -j * normal_degree : j * normal_degree;
      if (auto h0 = curve_h0(g, deg)) o.degrees[0][w] += h0;
      if (auto h1 = curve_h1(g, deg)) o.degrees[1][w] += h1;
    }
    out.push_back(std::move(o));
  }
  return out;
}

inline FixedComponent point(std::string name, std::vector<Weight> weights, std::size_t rank) {
  return make_component(std::move(name), 0, std::move(weights), HodgePolynomial::point(), rank);
}

inline MorsePolynomial trivial_cohomology(std::size_t rank, std::int64_t h01 = 0) {
  MorsePolynomial m(rank);
  m.set(0, CharacterSeries::monomial(Weight::zero(rank)));
  if (h01) m.set(1, CharacterSeries::monomial(Weight::zero(rank), static_cast<long>(h01)));
  return m;
}

/// CP^n with the standard action of the n-torus.
inline Scenario cp_n_torus(int n) {
  if (n < 1 || n > 4) throw Error(ErrorCode::Unsupported, "projective dimension must be 1..4");
  const std::size_t r = static_cast<std::size_t>(n);
  auto e = [&](std::size_t i) {
    std::vector<std::int64_t> c(r, 0);
    c[i] = 1;
    return Weight(c);
  };
  Scenario s;
  s.name = "cp" + std::to_string(n) + "_torus";
  s.rank = r;
  s.dim = n;
  s.e_rank = 1;
  std::vector<Weight> w0;
  for (std::size_t j = 0; j < r; ++j) w0.push_back(e(j));
  s.components.push_back(point("v0", w0, r));
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<Weight> wi{-e(i)};
    for (std::size_t j = 0; j < r; ++j) {
      if (j != i) wi.push_back(e(j) - e(i));
    }
    s.components.push_back(point("v" + std::to_string(i + 1), wi, r));
  }
  s.m_cohomology = trivial_cohomology(r);
  s.m_hodge = HodgePolynomial::projective(n);
  return s;
}

/// The round sphere rotated about its axis.
inline Scenario cp1() {
  Scenario s;
  s.name = "cp1";
  s.rank = 1;
  s.dim = 1;
  s.e_rank = 1;
  auto north = point("north", {Weight{1}}, 1);
  north.moment = Rational(1);
  auto south = point("south", {Weight{-1}}, 1);
  south.moment = Rational(-1);
  s.components = {north, south};
  s.m_cohomology = trivial_cohomology(1);
  s.m_hodge = HodgePolynomial::projective(1);
  return s;
}

/// The sphere with the hyperplane bundle, fiber weights 0 and -1.
inline Scenario cp1_o1() {
  Scenario s = cp1();
  s.name = "cp1_o1";
  s.components[0].e_character = CharacterSeries::monomial(Weight{0});
  s.components[0].moment = Rational(0);
  s.components[1].e_character = CharacterSeries::monomial(Weight{-1});
  s.components[1].moment = Rational(-1);
  MorsePolynomial m(1);
  m.set(0, CharacterSeries::from_terms(1, {{Weight{0}, Integer(1)}, {Weight{-1}, Integer(1)}}));
  s.m_cohomology = m;
  return s;
}

/// Surfaces with isolated fixed points only: the projective plane blown up
/// (m2 - 1) times at index-one points, so h^{1,1} = m2.
inline Scenario case_i(int m2) {
  if (m2 < 1) {
    throw Error(ErrorCode::Unsupported, "isolated fixed points force h^{1,1} >= 1 on a compact surface");
  }
  Scenario s;
  s.name = "case_i_m" + std::to_string(m2);
  s.rank = 1;
  s.dim = 2;
  s.e_rank = 1;
  std::vector<std::pair<std::int64_t, std::int64_t>> pts{{1, 3}, {-1, 2}, {-3, -2}};
  std::size_t latest = 1;
  for (int b = 1; b < m2; ++b) {
    auto [a, c] = pts[latest];
    pts[latest] = {c - a, a};
    pts.push_back({a - c, c});
    latest = pts.size() - 1;
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    s.components.push_back(point("p" + std::to_string(i), {Weight{pts[i].first}, Weight{pts[i].second}}, 1));
  }
  s.m_cohomology = trivial_cohomology(1);
  HodgePolynomial p(2, {{0, 0, 1}, {2, 2, 1}});
  p.add(1, 1, m2);
  s.m_hodge = p;
  return s;
}

/// Extremal fixed set an isolated point and a rational curve of normal
/// degree 1 - m2, with m2 interior points: h^{1,1} = m2 + 1.
inline Scenario case_ii(int m2) {
  Scenario s;
  s.name = "case_ii_m" + std::to_string(m2);
  s.rank = 1;
  s.dim = 2;
  s.e_rank = 1;
  auto curve = make_component("L", 1, {Weight{1}}, HodgePolynomial::curve(0), 1);
  curve.overrides = curve_overrides(0, 1 - m2, 1);
  s.components.push_back(curve);
  s.components.push_back(point("p", {Weight{-1}, Weight{-1}}, 1));
  for (int i = 0; i < m2; ++i) s.components.push_back(point("q" + std::to_string(i + 1), {Weight{-1}, Weight{1}}, 1));
  s.m_cohomology = trivial_cohomology(1);
  HodgePolynomial p(2, {{0, 0, 1}, {2, 2, 1}});
  p.add(1, 1, m2 + 1);
  s.m_hodge = p;
  return s;
}

/// Ruled surface over a genus-g curve: extremal curves S- (trivial normal
/// bundle) and S+ (normal degree -m2), m2 interior points.
inline Scenario case_iii(int g, int m2) {
  Scenario s;
  s.name = "case_iii_g" + std::to_string(g) + "_m" + std::to_string(m2);
  s.rank = 1;
  s.dim = 2;
  s.e_rank = 1;
  auto lower = make_component("S-", 1, {Weight{-1}}, HodgePolynomial::curve(g), 1);
  lower.moment = Rational(-1);
  auto upper = make_component("S+", 1, {Weight{1}}, HodgePolynomial::curve(g), 1);
  upper.moment = Rational(2);
  if (m2 > 0) upper.overrides = curve_overrides(g, -m2, 1);
  s.components.push_back(lower);
  s.components.push_back(upper);
  for (int i = 0; i < m2; ++i) {
    auto q = point("q" + std::to_string(i + 1), {Weight{-1}, Weight{1}}, 1);
    q.moment = Rational(1);
    s.components.push_back(q);
  }
  s.m_cohomology = trivial_cohomology(1, g);
  HodgePolynomial sigma = HodgePolynomial::curve(g);
  HodgePolynomial p = sigma.times_one_plus_st();
  p.add(1, 1, m2);
  p.set_dim(2);
  s.m_hodge = p;
  return s;
}

/// Sphere with the bundle O(2) (fiber weights = moments +-1), cut at the
/// equator; carries the quantization characters.
inline CutScenario cp1_cut() {
  Scenario parent = cp1();
  parent.name = "cp1_o2";
  parent.components[0].e_character = CharacterSeries::monomial(Weight{1});
  parent.components[1].e_character = CharacterSeries::monomial(Weight{-1});
  auto chars = [](std::initializer_list<std::int64_t> ws) {
    TermMap t;
    for (auto w : ws) t[Weight{w}] += 1;
    MorsePolynomial m(1);
    m.set(0, CharacterSeries::from_terms(1, t));
    return m;
  };
  parent.m_cohomology = chars({-1, 0, 1});
  CutScenario cs = build_cut_scenarios(parent, HodgePolynomial::point(), "cp1_cut");
  QuantizationData q;
  q.m_char = chars({-1, 0, 1});
  q.plus_char = chars({0, 1});
  q.minus_char = chars({-1, 0});
  q.reduced_dims = {1};
  cs.quantization = q;
  return cs;
}

/// Cut of the sphere with both fixed points above the level. The reduced
/// space is kept as a formal point, so this exercises the bookkeeping only.
inline CutScenario cp1_one_sided_cut() {
  Scenario parent = cp1();
  parent.name = "cp1_shifted";
  parent.components[0].moment = Rational(2);
  parent.components[1].moment = Rational(1);
  return build_cut_scenarios(parent, HodgePolynomial::point(), "cp1_one_sided_cut");
}

inline CutScenario case_iii_cut(int g, int m2) {
  Scenario parent = case_iii(g, m2);
  return build_cut_scenarios(parent, HodgePolynomial::curve(g), parent.name + "_cut");
}

/// Every shipped scenario, in a fixed order.
inline std::vector<Scenario> scenarios() {
  std::vector<Scenario> out{cp1(), cp1_o1()};
  for (int n = 2; n <= 3; ++n) out.push_back(cp_n_torus(n));
  for (int m2 : {1, 3}) out.push_back(case_i(m2));
  for (int m2 : {0, 1, 3}) out.push_back(case_ii(m2));
  for (int g : {0, 1, 2}) {
    for (int m2 : {0, 1, 3}) out.push_back(case_iii(g, m2));
  }
  return out;
}

inline std::vector<CutScenario> cuts() { return {cp1_cut(), cp1_one_sided_cut(), case_iii_cut(1, 1)}; }

}  // namespace eqmorse::corpus
