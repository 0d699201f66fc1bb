#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "eqmorse/corpus.hpp"
#include "eqmorse/fixed_point_model.hpp"
#include "support/oracles.hpp"

using namespace eqmorse;

namespace {

bool has_code(const std::vector<Diagnostic>& ds, const std::string& code) {
  return std::any_of(ds.begin(), ds.end(), [&](const Diagnostic& d) { return d.code == code; });
}

FixedComponent point_with(std::vector<Weight> ws, std::size_t rank = 1) {
  return make_component("p", 0, std::move(ws), HodgePolynomial::point(), rank);
}

oracle::Poly as_poly(const CharacterSeries& s) {
  oracle::Poly p;
  for (const auto& [w, m] : s.terms()) p[w.coords()] = m.get_si();
  return p;
}

}  // namespace

TEST(Validate, SphereIsValid) {
  auto ds = validate_scenario(corpus::cp1());
  EXPECT_FALSE(has_errors(ds));
}

TEST(Validate, ZeroWeight) {
  Scenario s = corpus::cp1();
  s.components[0].weights = {Weight{0}};
  EXPECT_TRUE(has_code(validate_scenario(s), "ZeroIsotropyWeight"));
  try {
    require_valid(s);
    FAIL() << "zero weight accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ValidationError);
  }
}

TEST(Validate, AsymmetricHodge) {
  Scenario s = corpus::cp1();
  s.dim = 2;
  s.components[0] = make_component("c", 1, {Weight{1}}, HodgePolynomial(1, {{0, 0, 1}, {1, 0, 1}}), 1);
  s.m_hodge.reset();
  EXPECT_TRUE(has_code(validate_scenario(s), "HodgeSymmetryViolated"));
}

TEST(Validate, EmptyFixedSetAndBadDepth) {
  Scenario s = corpus::cp1();
  s.components.clear();
  s.depth = 0;
  auto ds = validate_scenario(s);
  EXPECT_TRUE(has_code(ds, "EmptyFixedSet"));
  EXPECT_TRUE(has_code(ds, "InvalidDepth"));
}

TEST(Validate, DimensionMismatch) {
  Scenario s = corpus::cp1();
  s.components[0].weights.push_back(Weight{2});
  EXPECT_TRUE(has_code(validate_scenario(s), "DimensionMismatch"));
}

TEST(Validate, FactorizedCohomologyIsOnlyAWarning) {
  Scenario s = corpus::case_ii(2);
  s.components[0].overrides.clear();
  auto ds = validate_scenario(s);
  EXPECT_TRUE(has_code(ds, "FactorizedCohomologyAssumed"));
  EXPECT_FALSE(has_errors(ds));
}

TEST(KcCharacter, SingleWeightBothSigns) {
  auto plus = rank_one_chamber(+1);
  auto up = point_with({Weight{1}});
  auto s = kc_character(up, polarize(plus, up.weights), 5);
  for (std::int64_t k = 0; k <= 5; ++k) EXPECT_EQ(s.mult_at(Weight{-k}), 1);
  EXPECT_EQ(s.terms().size(), 6u);

  auto down = point_with({Weight{-1}});
  auto t = kc_character(down, polarize(plus, down.weights), 5);
  EXPECT_EQ(t.mult_at(Weight{0}), 0);
  for (std::int64_t k = 1; k <= 5; ++k) EXPECT_EQ(t.mult_at(Weight{-k}), 1);
}

TEST(KcCharacter, EmptyWeightListIsE) {
  auto c = point_with({});
  auto s = kc_character(c, polarize(rank_one_chamber(+1), c.weights), 5);
  EXPECT_EQ(s, CharacterSeries::monomial(Weight{0}));
}

TEST(IsolatedCharacter, Examples) {
  auto plus = rank_one_chamber(+1);
  auto a = point_with({Weight{1}});
  auto s = isolated_point_character(a, polarize(plus, a.weights), 7);
  for (std::int64_t k = 0; k <= 7; ++k) EXPECT_EQ(s.mult_at(Weight{-k}), 1);

  auto b = point_with({Weight{1}, Weight{-2}});
  auto t = isolated_point_character(b, polarize(plus, b.weights), 4);
  EXPECT_EQ(t.mult_at(Weight{0}), 0);
  EXPECT_EQ(t.mult_at(Weight{-1}), 0);
  EXPECT_EQ(t.mult_at(Weight{-2}), 1);
  EXPECT_EQ(t.mult_at(Weight{-3}), 1);
  EXPECT_EQ(t.mult_at(Weight{-4}), 2);
  EXPECT_EQ(as_poly(t), oracle::isolated_character({{1}, {-2}}, {1}, 4));

  auto shifted = a;
  shifted.e_character = CharacterSeries::monomial(Weight{3});
  auto u = isolated_point_character(shifted, polarize(plus, shifted.weights), 7);
  for (std::int64_t k = 0; k <= 7; ++k) EXPECT_EQ(u.mult_at(Weight{3 - k}), 1);
  EXPECT_EQ(u.mult_at(Weight{4}), 0);
}

TEST(IsolatedCharacter, RejectsCurves) {
  auto c = make_component("L", 1, {Weight{1}}, HodgePolynomial::curve(0), 1);
  try {
    (void)isolated_point_character(c, polarize(rank_one_chamber(+1), c.weights), 3);
    FAIL() << "curve accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotIsolated);
  }
}

TEST(KcCharacter, AgreesWithIsolatedAndStaysInShiftedCone) {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> coord(-3, 3), count(1, 3), ew(-2, 2);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Weight> ws;
    while (ws.size() < static_cast<std::size_t>(count(rng))) {
      Weight w{coord(rng), coord(rng)};
      if (!w.is_zero()) ws.push_back(w);
    }
    auto c = point_with(ws, 2);
    c.e_character = CharacterSeries::from_terms(2, {{Weight{ew(rng), ew(rng)}, 1}, {Weight{ew(rng), ew(rng)}, 2}});
    auto chambers = enumerate_chambers(ws, 2);
    // Parallel weights leave a line of symmetry along which E has no upper bound.
    if (!chambers.front()->lineality().empty()) continue;
    for (const auto& ch : chambers) {
      auto pol = polarize(ch, ws);
      auto kc = kc_character(c, pol, 6);
      EXPECT_EQ(kc, isolated_point_character(c, pol, 6));
      auto supp = detail::support(c.e_character.terms());
      Weight top = cone_upper_bound(*ch, supp);
      for (const auto& [w, m] : kc.terms()) EXPECT_TRUE(in_closed_dual_cone(*ch, top - w));
      auto deeper = kc_character(c, pol, 11);
      for (const auto& [w, m] : kc.terms()) EXPECT_EQ(deeper.mult_at(w), m);
      EXPECT_FALSE(first_disagreement(kc, deeper).has_value());
    }
  }
}

TEST(Canonical, HashIsStableAndSensitive) {
  auto a = corpus::case_iii(1, 1), b = corpus::case_iii(1, 1);
  EXPECT_EQ(canonical_string(a), canonical_string(b));
  EXPECT_EQ(scenario_hash(a), scenario_hash(b));
  b.components[0].weights[0] = Weight{-2};
  EXPECT_NE(canonical_string(a), canonical_string(b));
}
