#include <gtest/gtest.h>

#include "eqmorse/corpus.hpp"
#include "eqmorse/hodge_tools.hpp"

using namespace eqmorse;

TEST(HodgePolynomial, Basics) {
  auto p = HodgePolynomial::projective(2);
  EXPECT_EQ(p.at(1, 1), 1);
  EXPECT_TRUE(p.symmetric());
  EXPECT_TRUE(p.dual());
  EXPECT_EQ(p.todd_genus(), 1);
  auto c = HodgePolynomial::curve(2);
  EXPECT_EQ(c.todd_genus(), -1);
  EXPECT_EQ(c.restrict_s_zero(), (std::vector<std::int64_t>{1, 2}));
  EXPECT_EQ(c.diagonal(), (std::vector<std::int64_t>{1, 4, 1}));
  EXPECT_EQ((c.times_one_plus_st()).at(1, 2), 2);
}

TEST(Assemble, SphereAndProjectiveSpaces) {
  Scenario s = corpus::cp1();
  EXPECT_TRUE(assemble_hodge(s, rank_one_chamber(+1)).same_coeffs(HodgePolynomial::projective(1)));
  for (int n = 1; n <= 3; ++n) {
    Scenario p = corpus::cp_n_torus(n);
    for (const auto& ch : scenario_chambers(p)) {
      EXPECT_TRUE(assemble_hodge(p, ch).same_coeffs(HodgePolynomial::projective(n))) << n;
    }
  }
}

TEST(Assemble, RuledSurfaceTable) {
  for (int g : {0, 1, 2}) {
    for (int m2 : {0, 1, 3}) {
      Scenario s = corpus::case_iii(g, m2);
      auto p = assemble_hodge(s, rank_one_chamber(+1));
      EXPECT_EQ(p.at(0, 0), 1);
      EXPECT_EQ(p.at(0, 1), g);
      EXPECT_EQ(p.at(1, 0), g);
      EXPECT_EQ(p.at(1, 1), m2 + 2);
      EXPECT_EQ(p.at(1, 2), g);
      EXPECT_EQ(p.at(2, 1), g);
      EXPECT_EQ(p.at(2, 2), 1);
      EXPECT_EQ(p.at(2, 0), 0);
    }
  }
}

TEST(IsolatedNumbers, CountsByIndex) {
  auto sphere = isolated_hodge_numbers(corpus::cp1(), rank_one_chamber(+1));
  EXPECT_EQ(sphere, (std::map<int, std::int64_t>{{0, 1}, {1, 1}}));
  Scenario p = corpus::cp_n_torus(2);
  auto plane = isolated_hodge_numbers(p, scenario_chambers(p).front());
  EXPECT_EQ(plane, (std::map<int, std::int64_t>{{0, 1}, {1, 1}, {2, 1}}));
  Scenario single;
  single.name = "pt";
  single.rank = 1;
  single.components.push_back(corpus::point("p", {}, 1));
  EXPECT_EQ(isolated_hodge_numbers(single, rank_one_chamber(+1)), (std::map<int, std::int64_t>{{0, 1}}));
  try {
    (void)isolated_hodge_numbers(corpus::case_iii(0, 0), rank_one_chamber(+1));
    FAIL() << "curves accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAllIsolated);
  }
}

TEST(IsolatedNumbers, SumIsFixedPointCount) {
  for (const auto& s : corpus::scenarios()) {
    bool isolated = true;
    for (const auto& c : s.components) isolated = isolated && c.dim == 0;
    if (!isolated) continue;
    for (const auto& ch : scenario_chambers(s)) {
      std::int64_t total = 0;
      for (const auto& [k, h] : isolated_hodge_numbers(s, ch)) total += h;
      EXPECT_EQ(total, static_cast<std::int64_t>(s.components.size())) << s.name;
    }
  }
}

TEST(Consistency, SphereAndReversedCaseI) {
  Scenario s = corpus::cp1();
  auto rep = chamber_consistency_check(s, scenario_chambers(s));
  EXPECT_TRUE(rep.passed());
  Scenario r = corpus::case_i(3);
  for (auto& c : r.components) {
    for (auto& w : c.weights) w = -w;
  }
  auto rev = chamber_consistency_check(r, scenario_chambers(r));
  EXPECT_TRUE(rev.passed());
  EXPECT_TRUE(rev.assembled.front().same_coeffs(*r.m_hodge));
}

TEST(Consistency, AsymmetricDataIsFlagged) {
  Scenario s = corpus::cp1();
  s.components.push_back(corpus::point("extra", {Weight{1}}, 1));
  auto rep = chamber_consistency_check(s, scenario_chambers(s));
  EXPECT_FALSE(rep.passed());
  ASSERT_FALSE(rep.pairs.empty());
  EXPECT_FALSE(rep.pairs.front().residual.is_zero());
  EXPECT_THROW((void)assemble_hodge(s, rank_one_chamber(+1)), Error);
}

TEST(Todd, SphereAndRuledSurface) {
  auto a = todd_restriction_check(corpus::cp1(), rank_one_chamber(+1));
  EXPECT_TRUE(a.passed);
  EXPECT_EQ(a.todd_manifold, 1);
  EXPECT_EQ(a.minimum, "north");
  auto b = todd_restriction_check(corpus::case_iii(2, 1), rank_one_chamber(+1));
  EXPECT_TRUE(b.passed);
  EXPECT_EQ(b.minimum, "S+");
  EXPECT_EQ(b.h0k_manifold, (std::vector<std::int64_t>{1, 2}));
}

TEST(Todd, TwoMinima) {
  Scenario s = corpus::cp1();
  s.components[1].weights = {Weight{1}};
  try {
    (void)todd_restriction_check(s, rank_one_chamber(+1));
    FAIL() << "two minima accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MultipleMinima);
  }
}

TEST(OffDiagonal, Vanishing) {
  EXPECT_TRUE(carrell_lieberman_check(HodgePolynomial::projective(2), {0, 0, 0}));
  auto p = assemble_hodge(corpus::case_iii(1, 1), rank_one_chamber(+1));
  EXPECT_TRUE(carrell_lieberman_check(p, {1, 1, 0}));
  HodgePolynomial bad(2, {{0, 0, 1}, {2, 0, 1}, {0, 2, 1}, {2, 2, 1}});
  EXPECT_FALSE(carrell_lieberman_check(bad, {0}));
}

TEST(PerfectMorse, DiagonalCollapseOnCorpus) {
  for (const auto& s : corpus::scenarios()) {
    auto chambers = scenario_chambers(s);
    for (const auto& ch : chambers) {
      EXPECT_TRUE(perfect_morse_check(s, ch, chambers).passed) << s.name << " " << ch->id();
      Scenario undeclared = s;
      undeclared.m_hodge.reset();
      EXPECT_TRUE(perfect_morse_check(undeclared, ch, chambers).passed) << s.name;
    }
  }
}

TEST(Assemble, SymmetryAndDualityOnCorpus) {
  for (const auto& s : corpus::scenarios()) {
    for (const auto& ch : scenario_chambers(s)) {
      auto p = assemble_hodge_raw(s, ch);
      EXPECT_TRUE(p.symmetric() && p.dual()) << s.name;
    }
  }
}
