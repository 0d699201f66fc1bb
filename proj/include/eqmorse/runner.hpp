#pragma once

// Batch verification over scenarios and cuts. Work is fanned out per
// (scenario, chamber); results are merged in input order, then chamber id.

#include <algorithm>
#include <functional>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "eqmorse/cut_quant.hpp"
#include "eqmorse/errors.hpp"
#include "eqmorse/fixed_point_model.hpp"
#include "eqmorse/hodge_tools.hpp"
#include "eqmorse/json_io.hpp"
#include "eqmorse/lattice_chambers.hpp"
#include "eqmorse/morse_engine.hpp"

namespace eqmorse {

enum class OutputFormat { text, json };

struct CheckSet {
  bool morse = true;
  bool lefschetz = true;
  bool hodge = true;
  bool consistency = true;
  bool cut = true;
  bool quantization = true;
  bool mv_diagnostic = true;

  bool any() const { return morse || lefschetz || hodge || consistency || cut || quantization || mv_diagnostic; }
};

struct RunConfig {
  std::vector<io::Document> inputs;
  std::optional<std::int64_t> depth;  // overrides each scenario's own depth
  std::vector<std::size_t> chamber_ids;  // empty selects every chamber
  CheckSet checks;
  OutputFormat format = OutputFormat::text;
  unsigned jobs = 1;
  LatticeConfig lattice;
};

enum ExitCode : int { exit_pass = 0, exit_violation = 1, exit_input_error = 2 };

struct RunResult {
  int exit_code = exit_pass;
  io::Json report;
  std::string text;
  std::size_t checks_run = 0;
  std::size_t failures = 0;
  std::vector<std::string> warnings;
};

namespace detail {

struct TaskOutput {
  io::Json json = io::Json::object();
  std::vector<std::string> lines;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::vector<std::string> warnings;

  void verdict(bool ok, const std::string& line) {
    ++checks;
    if (!ok) ++failures;
    lines.push_back(std::string(ok ? "PASS " : "FAIL ") + line);
  }
  void note(const std::string& line) { lines.push_back("NOTE " + line); }
  void failure(const std::string& where, const Error& e) {
    ++checks;
    ++failures;
    lines.push_back("FAIL " + where + ": " + e.what());
  }
};

/// Runs tasks with at most `jobs` in flight; output slots keep task order.
inline std::vector<TaskOutput> run_tasks(const std::vector<std::function<TaskOutput()>>& tasks, unsigned jobs) {
  std::vector<TaskOutput> out(tasks.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) out[i] = tasks[i]();
    return out;
  }
  for (std::size_t start = 0; start < tasks.size(); start += jobs) {
    std::vector<std::future<TaskOutput>> batch;
    std::size_t end = std::min(tasks.size(), start + jobs);
    for (std::size_t i = start; i < end; ++i) batch.push_back(std::async(std::launch::async, tasks[i]));
    for (std::size_t i = start; i < end; ++i) out[i] = batch[i - start].get();
  }
  return out;
}

inline std::string window_text(const std::optional<Window>& w) {
  if (!w) return "complete";
  return "anchor " + to_string(w->anchor) + " depth " + std::to_string(w->depth);
}

inline std::vector<ChamberRef> select_chambers(const std::vector<ChamberRef>& all, const std::vector<std::size_t>& ids,
                                               const std::string& name) {
  if (ids.empty()) return all;
  std::vector<ChamberRef> out;
  for (auto id : ids) {
    if (id >= all.size()) {
      throw Error(ErrorCode::ValidationError,
                  "scenario '" + name + "' has " + std::to_string(all.size()) + " chambers; no chamber " + std::to_string(id));
    }
    out.push_back(all[id]);
  }
  return out;
}

inline TaskOutput chamber_task(const Scenario& s, const ChamberRef& ch, const std::vector<ChamberRef>& all,
                               const CheckSet& checks, LhsCache* cache) {
  TaskOutput o;
  const std::string where = s.name + " chamber " + std::to_string(ch->id());
  o.json["id"] = ch->id();
  o.json["direction"] = io::encode(ch->direction());
  if (checks.morse) {
    if (!s.m_cohomology) {
      o.note(where + " strong-morse skipped: no cohomology of M supplied");
    } else {
      try {
        auto rep = verify_strong(s, ch, cache);
        o.json["morse"] = io::encode(rep);
        o.json["weak"] = io::encode(verify_weak(rep));
        std::string detail = "window " + window_text(rep.window);
        if (rep.first_violation) {
          detail += "; degree " + std::to_string(rep.first_violation->degree) + " weight " +
                    to_string(rep.first_violation->weight) + " mult " + to_string(rep.first_violation->mult);
        }
        if (!rep.remainder_zero) {
          const auto& [w, m] = *rep.remainder.terms().begin();
          detail += "; remainder " + to_string(m) + " at weight " + to_string(w);
        }
        o.verdict(rep.passed(), where + " strong-morse " + detail);
      } catch (const Error& e) {
        o.json["morse"] = io::Json{{"error", e.what()}};
        o.failure(where + " strong-morse", e);
      }
    }
  }
  if (checks.hodge) {
    try {
      HodgePolynomial p = assemble_hodge(s, ch);
      io::Json h{{"assembled", p.to_string()}};
      bool ok = true;
      if (s.m_hodge) {
        ok = p.same_coeffs(*s.m_hodge);
        h["matches_declared"] = ok;
      }
      o.verdict(ok, where + " hodge-assembly " + p.to_string());
      auto pm = perfect_morse_check(s, ch, all);
      h["perfect_morse"] = io::encode(pm);
      o.verdict(pm.passed, where + " perfect-morse s=t");
      o.json["hodge"] = h;
    } catch (const Error& e) {
      o.json["hodge"] = io::Json{{"error", e.what()}};
      o.failure(where + " hodge-assembly", e);
    }
    try {
      auto td = todd_restriction_check(s, ch);
      o.json["todd"] = io::encode(td);
      o.verdict(td.passed, where + " h0k-restriction minimum " + td.minimum);
    } catch (const Error& e) {
      o.json["todd"] = io::Json{{"error", e.what()}};
      o.failure(where + " h0k-restriction", e);
    }
  }
  return o;
}

inline TaskOutput scenario_task(const Scenario& s, const std::vector<ChamberRef>& all,
                                const std::vector<ChamberRef>& selected, const CheckSet& checks, LhsCache* cache) {
  TaskOutput o;
  if (checks.lefschetz) {
    if (!s.m_cohomology) {
      o.note(s.name + " lefschetz skipped: no cohomology of M supplied");
    } else {
      try {
        auto rep = lefschetz_check(s, selected, cache);
        o.json["lefschetz"] = io::encode(rep);
        o.verdict(rep.passed(), s.name + " lefschetz t=-1 over " + std::to_string(selected.size()) + " chambers");
      } catch (const Error& e) {
        o.json["lefschetz"] = io::Json{{"error", e.what()}};
        o.failure(s.name + " lefschetz", e);
      }
    }
  }
  if (checks.consistency) {
    try {
      auto rep = chamber_consistency_check(s, all);
      o.json["consistency"] = io::encode(rep);
      o.verdict(rep.passed(), s.name + " chamber-consistency over " + std::to_string(all.size()) + " chambers");
    } catch (const Error& e) {
      o.json["consistency"] = io::Json{{"error", e.what()}};
      o.failure(s.name + " chamber-consistency", e);
    }
  }
  if (checks.hodge) {
    HodgePolynomial p = assemble_hodge_raw(s, all.front());
    o.json["hodge_table"] = io::hodge_matrix(p);
    bool cl = carrell_lieberman_check(p, component_dims(s));
    o.json["off_diagonal_vanishing"] = cl;
    o.verdict(cl, s.name + " off-diagonal vanishing");
  }
  return o;
}

inline TaskOutput cut_task(const CutScenario& cs, const CheckSet& checks) {
  TaskOutput o;
  io::Json prov;
  prov["chamber"] = "positive half-line";
  prov["depth"] = cs.parent.depth;
  io::Json ids = io::Json::array();
  o.json["name"] = cs.name;
  o.json["kind"] = "cut";
  if (checks.cut) {
    try {
      auto g = glue_check(cs);
      o.json["glue"] = io::encode(g);
      o.verdict(g.glue_holds, cs.name + " glue P(M+)+P(M-)=P(M)+(1+st)P(M0)");
      o.verdict(g.corollary_holds, cs.name + " h0k(M)=h0k(M0)");
      ids.push_back("hodge gluing");
      ids.push_back("h0k of M equals h0k of M0");
    } catch (const Error& e) {
      o.failure(cs.name + " glue", e);
    }
    try {
      auto lift = prequantum_lift_check(cs.parent);
      o.json["prequantum_lift"] = io::encode(lift);
      o.verdict(lift.consistent, cs.name + " prequantum lift " + (lift.liftable ? "exists" : "needs a shift"));
      ids.push_back("prequantum lift");
    } catch (const Error& e) {
      o.failure(cs.name + " prequantum lift", e);
    }
  }
  if (checks.quantization) {
    if (!cs.quantization) {
      o.note(cs.name + " quantization skipped: no quantization data");
    } else {
      try {
        auto q = quantization_morse_check(cs);
        o.json["quantization"] = io::encode(q);
        o.verdict(q.plus.passed(), cs.name + " invariant inequalities on M+");
        o.verdict(q.minus.passed(), cs.name + " invariant inequalities on M-");
        o.verdict(q.com_holds, cs.name + " invariant Euler characteristics agree");
        io::Json pre = io::Json::array();
        for (const auto& r : prequantum_morse_reports(cs)) {
          pre.push_back(io::encode(r));
          o.verdict(r.passed(), cs.name + " prequantum strong-morse window " + window_text(r.window));
        }
        o.json["prequantum_morse"] = pre;
        ids.push_back("invariant quantization inequalities");
        ids.push_back("invariant Euler characteristics");
        ids.push_back("prequantum strong inequalities");
      } catch (const Error& e) {
        o.failure(cs.name + " quantization", e);
      }
    }
  }
  if (checks.mv_diagnostic && cs.quantization) {
    try {
      auto mv = mayer_vietoris_diagnostic(cs);
      o.json["mv_diagnostic"] = io::encode(mv);
      std::string line = std::string(MayerVietorisReport::label) + " " + cs.name + " Mayer-Vietoris " +
                         (mv.consistent() ? "consistent" : "inconsistent");
      o.lines.push_back("DIAG " + line);
      if (!mv.consistent()) o.warnings.push_back(line);
    } catch (const Error& e) {
      o.warnings.push_back(cs.name + " Mayer-Vietoris diagnostic: " + e.what());
    }
  }
  prov["identities"] = ids;
  o.json["provenance"] = prov;
  return o;
}

}  // namespace detail

inline void validate_config(const RunConfig& cfg) {
  if (cfg.depth && *cfg.depth < 1) throw Error(ErrorCode::ValidationError, "depth must be at least 1");
  if (!cfg.checks.any()) throw Error(ErrorCode::ValidationError, "no checks enabled");
  if (cfg.inputs.empty()) throw Error(ErrorCode::ValidationError, "no inputs");
}

/// Runs every enabled check. Exit code 0 iff no gating check failed; the
/// Mayer-Vietoris diagnostic only produces warnings.
inline RunResult run_report(const RunConfig& cfg) {
  validate_config(cfg);
  LhsCache cache;

  struct Plan {
    std::size_t input = 0;
    bool cut = false;
    std::size_t first_task = 0;
    std::size_t chamber_tasks = 0;
  };
  std::vector<Scenario> scenarios;
  std::vector<CutScenario> cuts;
  std::vector<std::vector<ChamberRef>> all_chambers;
  std::vector<std::vector<ChamberRef>> selected;
  std::vector<Plan> plans;

  for (std::size_t i = 0; i < cfg.inputs.size(); ++i) {
    if (const auto* s = std::get_if<Scenario>(&cfg.inputs[i])) {
      Scenario sc = *s;
      if (cfg.depth) sc.depth = *cfg.depth;
      auto chambers = scenario_chambers(sc, cfg.lattice);
      selected.push_back(detail::select_chambers(chambers, cfg.chamber_ids, sc.name));
      all_chambers.push_back(std::move(chambers));
      scenarios.push_back(std::move(sc));
      plans.push_back({scenarios.size() - 1, false, 0, 0});
    } else {
      CutScenario cs = std::get<CutScenario>(cfg.inputs[i]);
      if (cfg.depth) {
        cs.parent.depth = cs.plus.depth = cs.minus.depth = *cfg.depth;
      }
      cuts.push_back(std::move(cs));
      plans.push_back({cuts.size() - 1, true, 0, 0});
    }
  }

  std::vector<std::function<detail::TaskOutput()>> tasks;
  for (auto& p : plans) {
    p.first_task = tasks.size();
    if (p.cut) {
      const CutScenario* cs = &cuts[p.input];
      tasks.push_back([cs, &cfg] { return detail::cut_task(*cs, cfg.checks); });
      continue;
    }
    const Scenario* s = &scenarios[p.input];
    const auto* sel = &selected[p.input];
    const auto* all = &all_chambers[p.input];
    for (const auto& ch : *sel) {
      tasks.push_back([s, ch, all, &cfg, &cache] { return detail::chamber_task(*s, ch, *all, cfg.checks, &cache); });
    }
    p.chamber_tasks = sel->size();
    tasks.push_back([s, all, sel, &cfg, &cache] { return detail::scenario_task(*s, *all, *sel, cfg.checks, &cache); });
  }

  auto outputs = detail::run_tasks(tasks, std::max(1u, cfg.jobs));

  RunResult res;
  io::Json items = io::Json::array();
  std::ostringstream text;
  auto absorb = [&](const detail::TaskOutput& o) {
    res.checks_run += o.checks;
    res.failures += o.failures;
    for (const auto& w : o.warnings) res.warnings.push_back(w);
    for (const auto& l : o.lines) text << l << '\n';
  };
  for (const auto& p : plans) {
    if (p.cut) {
      const auto& o = outputs[p.first_task];
      absorb(o);
      items.push_back(o.json);
      continue;
    }
    const Scenario& s = scenarios[p.input];
    io::Json entry;
    entry["name"] = s.name;
    entry["kind"] = "scenario";
    entry["rank"] = s.rank;
    entry["depth"] = s.depth;
    entry["chamber_count"] = all_chambers[p.input].size();
    io::Json chs = io::Json::array();
    std::size_t before = res.failures;
    for (std::size_t k = 0; k < p.chamber_tasks; ++k) {
      const auto& o = outputs[p.first_task + k];
      absorb(o);
      chs.push_back(o.json);
    }
    entry["chambers"] = chs;
    const auto& so = outputs[p.first_task + p.chamber_tasks];
    absorb(so);
    for (const auto& [k, v] : so.json.items()) entry[k] = v;
    entry["passed"] = res.failures == before;
    items.push_back(entry);
  }
  for (const auto& w : res.warnings) text << "WARN " << w << '\n';
  text << "checks " << res.checks_run << ", failures " << res.failures << ", warnings " << res.warnings.size() << '\n';

  res.exit_code = res.failures ? exit_violation : exit_pass;
  res.report = io::Json::object();
  res.report["items"] = items;
  io::Json warnings = io::Json::array();
  for (const auto& w : res.warnings) warnings.push_back(w);
  res.report["summary"] = io::Json{{"checks", res.checks_run},
                                   {"failures", res.failures},
                                   {"warnings", warnings},
                                   {"passed", res.failures == 0}};
  res.text = text.str();
  return res;
}

inline std::string render(const RunResult& r, OutputFormat f) {
  return f == OutputFormat::json ? r.report.dump(2) + "\n" : r.text;
}

}  // namespace eqmorse
