// Acceptance criteria AC1-AC10. One PASS/FAIL line per criterion; the exit
// status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "eqmorse/eqmorse.hpp"
#include "support/oracles.hpp"

using namespace eqmorse;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  std::vector<std::string> problems;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (problems.size() < 5) problems.push_back(what);
    }
  }
};

int failures = 0;

void criterion(const char* id, const char* title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.problems.push_back(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > 5.0) o.require(false, "exceeded the 5 s budget");
  std::printf("%s %s %s: %s (%.2fs)\n", id, o.ok ? "PASS" : "FAIL", title, o.detail.c_str(), secs);
  for (const auto& p : o.problems) std::printf("    %s\n", p.c_str());
  if (!o.ok) ++failures;
}

std::string label(const Scenario& s, const ChamberRef& c) { return s.name + " chamber " + std::to_string(c->id()); }

HodgePolynomial diagonal_sum(int n) {
  HodgePolynomial p(n);
  for (int k = 0; k <= n; ++k) p.add(k, k, 1);
  return p;
}

std::vector<oracle::Vec> as_vecs(const std::vector<Weight>& ws) {
  std::vector<oracle::Vec> out;
  for (const auto& w : ws) out.push_back(w.coords());
  return out;
}

}  // namespace

int main() {
  const auto scenarios = corpus::scenarios();
  const auto cuts = corpus::cuts();
  constexpr std::int64_t depth = 10;

  criterion("AC1", "strong Morse inequalities", [&](Outcome& o) {
    std::size_t n = 0;
    for (const auto& s : scenarios) {
      for (const auto& ch : scenario_chambers(s)) {
        auto rep = verify_strong(s, ch, depth);
        o.require(rep.remainder_zero && rep.nonneg, label(s, ch));
        o.require(rep.window && rep.window->depth == depth, label(s, ch) + " window depth");
        ++n;
      }
    }
    o.detail = std::to_string(scenarios.size()) + " scenarios, " + std::to_string(n) + " chambers, depth 10";
  });

  criterion("AC2", "fixed-point formula at t = -1", [&](Outcome& o) {
    for (const auto& s : scenarios) {
      auto rep = lefschetz_check(s, scenario_chambers(s), depth);
      o.require(rep.chamber_independent, s.name + " depends on the chamber");
      for (const auto& c : rep.chambers) {
        o.require(c.matches, s.name + " chamber " + std::to_string(c.chamber_id) + " differs from the Euler character");
      }
    }
    o.detail = "specialized sides equal the Euler character in every chamber";
  });

  criterion("AC3", "Hodge numbers from fixed points", [&](Outcome& o) {
    for (int n = 1; n <= 3; ++n) {
      Scenario s = corpus::cp_n_torus(n);
      for (const auto& ch : scenario_chambers(s)) {
        o.require(assemble_hodge(s, ch).same_coeffs(diagonal_sum(n)), label(s, ch));
      }
    }
    // Surface table: case I h11 = m2, case II h11 = m2 + 1, case III h01 = g and h11 = m2 + 2.
    for (int m2 : {1, 3}) {
      auto p = assemble_hodge(corpus::case_i(m2), rank_one_chamber(+1));
      o.require(p.at(1, 1) == m2 && p.at(0, 1) == 0, "case I m2=" + std::to_string(m2));
    }
    for (int m2 : {0, 1, 3}) {
      auto p = assemble_hodge(corpus::case_ii(m2), rank_one_chamber(+1));
      o.require(p.at(1, 1) == m2 + 1 && p.at(0, 1) == 0, "case II m2=" + std::to_string(m2));
    }
    for (int g : {0, 1, 2}) {
      for (int m2 : {0, 1, 3}) {
        auto p = assemble_hodge(corpus::case_iii(g, m2), rank_one_chamber(+1));
        bool ok = p.at(0, 1) == g && p.at(1, 0) == g && p.at(1, 1) == m2 + 2 && p.at(1, 2) == g && p.at(2, 1) == g &&
                  p.at(0, 0) == 1 && p.at(2, 2) == 1 && p.at(2, 0) == 0;
        o.require(ok, "case III g=" + std::to_string(g) + " m2=" + std::to_string(m2) + ": " + p.to_string());
      }
    }
    o.detail = "CP^1..CP^3 and surface cases I (m2 in {1,3}), II, III";
  });

  criterion("AC4", "chamber independence of the assembly", [&](Outcome& o) {
    for (const auto& s : scenarios) {
      auto rep = chamber_consistency_check(s, scenario_chambers(s));
      o.require(rep.pairs_ok, s.name + " opposite-chamber residual");
      o.require(rep.all_equal, s.name + " assemblies differ");
    }
    o.detail = "zero residuals and equal assemblies for all scenarios";
  });

  criterion("AC5", "s = t collapse", [&](Outcome& o) {
    for (const auto& s : scenarios) {
      auto chambers = scenario_chambers(s);
      for (const auto& ch : chambers) o.require(perfect_morse_check(s, ch, chambers).passed, label(s, ch));
    }
    o.detail = "sum t^(2 nu) P(F; t, t) = P(M; t, t) exactly";
  });

  criterion("AC6", "gluing of cut pieces", [&](Outcome& o) {
    for (const auto& cs : cuts) {
      auto g = glue_check(cs);
      o.require(g.glue_holds, cs.name + " residual " + g.residual.to_string());
      o.require(g.corollary_holds, cs.name + " h0k mismatch");
    }
    o.detail = "sphere cut, one-sided cut, ruled-surface cut";
  });

  criterion("AC7", "invariant quantization inequalities", [&](Outcome& o) {
    const CutScenario cs = corpus::cp1_cut();
    auto rep = quantization_morse_check(cs);
    // Direct weight-zero counts in the supplied characters.
    auto count_zero = [](const MorsePolynomial& p) {
      std::vector<Integer> out;
      for (const auto& c : p.coeffs()) {
        Integer n = 0;
        for (const auto& [w, m] : c.terms()) {
          if (w.is_zero()) n += m;
        }
        out.push_back(n);
      }
      return out;
    };
    const auto& qd = *cs.quantization;
    o.require(rep.plus.invariant == count_zero(qd.plus_char), "M+ invariant count");
    o.require(rep.minus.invariant == count_zero(qd.minus_char), "M- invariant count");
    o.require(rep.plus.passed() && rep.minus.passed(), "Q+- not a nonnegative quotient");
    auto alt = [](const std::vector<Integer>& v) {
      Integer s = 0;
      for (std::size_t k = 0; k < v.size(); ++k) s += k % 2 ? -v[k] : v[k];
      return s;
    };
    Integer reduced = 0;
    for (std::size_t k = 0; k < qd.reduced_dims.size(); ++k) {
      reduced += k % 2 ? -qd.reduced_dims[k] : qd.reduced_dims[k];
    }
    o.require(alt(count_zero(qd.plus_char)) == reduced && alt(count_zero(qd.minus_char)) == reduced &&
                  alt(count_zero(qd.m_char)) == reduced,
              "invariant Euler characteristics differ");
    o.require(rep.com_holds, "report disagrees on Euler characteristics");
    o.detail = "sphere cut, invariant counts match the characters, Q+- >= 0";
  });

  criterion("AC8", "oracle equivalences", [&](Outcome& o) {
    std::mt19937 rng(20240601);
    std::uniform_int_distribution<int> coord(-2, 2), nweights(2, 5);
    for (int trial = 0; trial < 20; ++trial) {
      std::size_t rank = trial < 10 ? 2 : 3;
      std::vector<Weight> ws;
      int n = nweights(rng);
      while (static_cast<int>(ws.size()) < n) {
        std::vector<std::int64_t> c(rank);
        for (auto& x : c) x = coord(rng);
        Weight w(c);
        if (!w.is_zero()) ws.push_back(w);
      }
      std::set<std::vector<int>> got;
      for (const auto& c : enumerate_chambers(ws, rank)) got.insert(c->sign_vector());
      auto expect = oracle::grid_sign_vectors(as_vecs(ws), rank, rank == 2 ? 64 : 32);
      o.require(got == expect, "arrangement " + std::to_string(trial) + ": " + std::to_string(got.size()) + " vs " +
                                   std::to_string(expect.size()) + " regions");
    }

    std::uniform_int_distribution<int> wc(-3, 3), count(1, 4);
    for (int trial = 0; trial < 50; ++trial) {
      std::size_t rank = trial % 2 ? 2 : 1;
      std::vector<Weight> ws;
      int n = count(rng);
      while (static_cast<int>(ws.size()) < n) {
        std::vector<std::int64_t> c(rank);
        for (auto& x : c) x = wc(rng);
        Weight w(c);
        if (!w.is_zero()) ws.push_back(w);
      }
      auto chambers = enumerate_chambers(ws, rank);
      if (!chambers.front()->lineality().empty()) {
        --trial;  // parallel weights only; redraw
        continue;
      }
      const auto& ch = chambers[static_cast<std::size_t>(trial) % chambers.size()];
      auto comp = make_component("p", 0, ws, HodgePolynomial::point(), rank);
      auto got = isolated_point_character(comp, polarize(ch, ws), 8);
      oracle::Poly g;
      for (const auto& [w, m] : got.terms()) g[w.coords()] = m.get_si();
      o.require(g == oracle::isolated_character(as_vecs(ws), ch->direction().coords(), 8),
                "isolated character " + std::to_string(trial));
    }

    std::uniform_int_distribution<int> len(0, 8), coef(-20, 20), wt(-4, 4);
    for (int trial = 0; trial < 1000; ++trial) {
      int n = len(rng);
      MorsePolynomial p(1);
      std::map<std::int64_t, std::vector<std::int64_t>> dense;
      for (int k = 0; k < n; ++k) {
        TermMap t;
        for (int j = 0; j < 3; ++j) {
          std::int64_t w = wt(rng), m = coef(rng);
          t[Weight{w}] += m;
          auto& v = dense[w];
          v.resize(n, 0);
          v[k] += m;
        }
        p.set(k, CharacterSeries::from_terms(1, t));
      }
      auto d = poly_divide_one_plus_t(p);
      auto back = times_one_plus_t(d.quotient);
      back.add_to(0, d.remainder);
      bool ok = back.same_terms(p);
      for (const auto& [w, coeffs] : dense) {
        auto [q, rem] = oracle::divide_by_one_plus_t(coeffs);
        ok = ok && d.remainder.mult_at(Weight{w}) == rem;
        for (std::size_t k = 0; k < q.size(); ++k) ok = ok && d.quotient.coeff(k).mult_at(Weight{w}) == q[k];
      }
      o.require(ok, "division " + std::to_string(trial));
    }
    o.detail = "20 arrangements, 50 isolated characters (depth 8), 1000 divisions";
  });

  criterion("AC9", "reduction to a circle", [&](Outcome& o) {
    std::mt19937 rng(99);
    std::vector<Scenario> tori{corpus::cp_n_torus(2), corpus::cp_n_torus(3)};
    for (int trial = 0; trial < 20; ++trial) {
      const Scenario& s = tori[static_cast<std::size_t>(trial) % tori.size()];
      auto chambers = scenario_chambers(s);
      const auto& ch = chambers[std::uniform_int_distribution<std::size_t>(0, chambers.size() - 1)(rng)];
      MorsePolynomial lhs = strong_lhs(s, ch, depth);
      std::vector<Weight> window;
      for (const auto& c : lhs.coeffs()) {
        for (const auto& [w, m] : c.terms()) window.push_back(w);
      }
      Weight xi = window[std::uniform_int_distribution<std::size_t>(0, window.size() - 1)(rng)];
      Weight v = find_reduction_vector(*ch, xi, window);
      bool separates = ch->contains(v);
      for (const auto& l : window) {
        if (l != xi && pairing(l - xi, v) == 0) separates = false;
      }
      o.require(separates, label(s, ch) + " v " + to_string(v) + " does not separate " + to_string(xi));
      auto rc = reduction_check(s, ch, xi);
      o.require(rc.agree, label(s, ch) + " xi " + to_string(xi) + " v " + to_string(rc.v));
    }
    o.detail = "20 random (chamber, xi, window) triples on CP^2 and CP^3";
  });

  criterion("AC10", "window stability", [&](Outcome& o) {
    for (const auto& s : scenarios) {
      for (const auto& ch : scenario_chambers(s)) {
        auto shallow = strong_lhs(s, ch, depth);
        auto deep = strong_lhs(s, ch, 15);
        for (std::size_t k = 0; k < std::max(shallow.size(), deep.size()); ++k) {
          const auto& a = shallow.coeff(k);
          const auto& b = deep.coeff(k);
          bool ok = !first_disagreement(a, b).has_value();
          for (const auto& [w, m] : a.terms()) ok = ok && b.mult_at(w) == m;
          for (const auto& [w, m] : b.terms()) ok = ok && (!a.certifies(w) || a.mult_at(w) == m);
          o.require(ok, label(s, ch) + " degree " + std::to_string(k));
        }
      }
    }
    o.detail = "depth 15 agrees with depth 10 on the depth-10 window";
  });

  std::printf("%s\n", failures ? "ACCEPTANCE FAILED" : "ACCEPTANCE PASSED");
  return failures ? 1 : 0;
}
