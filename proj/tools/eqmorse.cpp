#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eqmorse/eqmorse.hpp"

namespace fs = std::filesystem;
using namespace eqmorse;

namespace {

struct Options {
  std::vector<std::string> inputs;
  std::optional<std::int64_t> depth;
  std::vector<std::size_t> chambers;
  std::string format = "text";
  unsigned jobs = 1;
  std::string corpus;
  std::string xi;
  std::string out_dir;
};

std::string corpus_dir(const Options& o) {
  if (!o.corpus.empty()) return o.corpus;
  if (const char* env = std::getenv("EQMORSE_CORPUS"); env && *env) return env;
#ifdef EQMORSE_DEFAULT_CORPUS
  return EQMORSE_DEFAULT_CORPUS;
#else
  return "corpus";
#endif
}

std::vector<std::string> input_paths(const Options& o) {
  if (!o.inputs.empty()) return o.inputs;
  std::string dir = corpus_dir(o);
  if (!fs::is_directory(dir)) throw Error(ErrorCode::ParseError, "corpus directory " + dir + " not found");
  std::vector<std::string> paths;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") paths.push_back(e.path().string());
  }
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) throw Error(ErrorCode::ParseError, "no scenario files in " + dir);
  return paths;
}

std::vector<io::Document> load_inputs(const Options& o) {
  std::vector<io::Document> docs;
  for (const auto& p : input_paths(o)) docs.push_back(io::load_document(p));
  return docs;
}

OutputFormat format_of(const Options& o) { return o.format == "json" ? OutputFormat::json : OutputFormat::text; }

int run_checks(const Options& o, CheckSet checks, bool hodge_tables = false) {
  RunConfig cfg;
  cfg.inputs = load_inputs(o);
  cfg.depth = o.depth;
  cfg.chamber_ids = o.chambers;
  cfg.checks = checks;
  cfg.format = format_of(o);
  cfg.jobs = o.jobs;
  RunResult r = run_report(cfg);
  std::cout << render(r, cfg.format);
  if (hodge_tables && cfg.format == OutputFormat::text) {
    for (const auto& d : cfg.inputs) {
      if (const auto* s = std::get_if<Scenario>(&d)) {
        std::cout << "\n" << s->name << "\n" << io::hodge_markdown(assemble_hodge_raw(*s, scenario_chambers(*s).front()));
      }
    }
  }
  return r.exit_code;
}

int cmd_chambers(const Options& o) {
  io::Json out = io::Json::array();
  std::ostringstream text;
  for (const auto& d : load_inputs(o)) {
    const auto* s = std::get_if<Scenario>(&d);
    if (!s) continue;
    auto chambers = scenario_chambers(*s);
    out.push_back(io::Json{{"name", s->name}, {"chambers", io::encode(chambers)}});
    text << s->name << ": " << chambers.size() << " chambers\n";
    for (const auto& c : chambers) {
      text << "  " << c->id() << "  sample " << to_string(c->sample_point()) << "  signs ";
      for (int sg : c->sign_vector()) text << (sg > 0 ? '+' : '-');
      text << '\n';
    }
  }
  std::cout << (format_of(o) == OutputFormat::json ? out.dump(2) + "\n" : text.str());
  return exit_pass;
}

Weight parse_weight(const std::string& text, std::size_t rank) {
  std::vector<std::int64_t> c;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      c.push_back(std::stoll(tok));
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "--xi: malformed coordinate '" + tok + "'");
    }
  }
  if (c.size() != rank) throw Error(ErrorCode::ParseError, "--xi needs " + std::to_string(rank) + " coordinates");
  return Weight(std::move(c));
}

int cmd_reduce_circle(const Options& o) {
  if (o.xi.empty()) throw Error(ErrorCode::ParseError, "--xi is required");
  io::Json out = io::Json::array();
  std::ostringstream text;
  bool all_agree = true;
  for (const auto& d : load_inputs(o)) {
    const auto* sp = std::get_if<Scenario>(&d);
    if (!sp) continue;
    Scenario s = *sp;
    if (o.depth) s.depth = *o.depth;
    auto chambers = scenario_chambers(s);
    std::vector<std::size_t> ids = o.chambers;
    if (ids.empty()) ids.push_back(0);
    Weight xi = parse_weight(o.xi, s.rank);
    for (auto id : ids) {
      if (id >= chambers.size()) throw Error(ErrorCode::ValidationError, "no chamber " + std::to_string(id));
      auto rc = reduction_check(s, chambers[id], xi);
      all_agree = all_agree && rc.agree;
      io::Json j = io::encode(rc);
      j["name"] = s.name;
      j["chamber"] = id;
      out.push_back(j);
      text << (rc.agree ? "PASS " : "FAIL ") << s.name << " chamber " << id << " xi " << to_string(xi) << " v "
           << to_string(rc.v) << " torus depth " << rc.torus_depth << " circle depth " << rc.circle_depth << '\n';
    }
  }
  std::cout << (format_of(o) == OutputFormat::json ? out.dump(2) + "\n" : text.str());
  return all_agree ? exit_pass : exit_violation;
}

int cmd_generate_corpus(const Options& o) {
  std::string dir = o.out_dir.empty() ? corpus_dir(o) : o.out_dir;
  fs::create_directories(dir);
  auto write = [&](const std::string& name, const io::Json& j) {
    std::ofstream f(fs::path(dir) / (name + ".json"));
    f << j.dump(2) << '\n';
    std::cout << "wrote " << (fs::path(dir) / (name + ".json")).string() << '\n';
  };
  for (const auto& s : corpus::scenarios()) write(s.name, io::encode(s));
  for (const auto& c : corpus::cuts()) write(c.name, io::encode(c));
  return exit_pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant Morse inequalities and Hodge numbers from fixed-point data"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--depth", o.depth, "Truncation depth of character series")->check(CLI::PositiveNumber);
  app.add_option("--chamber", o.chambers, "Chamber ids to check, comma-separated (default: all)")
      ->delimiter(',')
      ->allow_extra_args(false);
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--jobs", o.jobs, "Parallel tasks")->check(CLI::PositiveNumber);
  app.add_option("--corpus", o.corpus, "Scenario directory (default: $EQMORSE_CORPUS)");

  auto with_inputs = [&](CLI::App* sub) {
    sub->add_option("inputs", o.inputs, "Scenario or cut JSON files (default: the corpus)");
    return sub;
  };
  auto* chambers = with_inputs(app.add_subcommand("chambers", "List action chambers"));
  auto* morse = with_inputs(app.add_subcommand("verify-morse", "Strong and weak Morse inequalities"));
  auto* lefschetz = with_inputs(app.add_subcommand("lefschetz", "Fixed-point formula at t = -1"));
  auto* hodge = with_inputs(app.add_subcommand("hodge", "Hodge numbers from fixed-point data"));
  auto* consistency = with_inputs(app.add_subcommand("consistency", "Chamber independence of the Hodge assembly"));
  auto* cut = with_inputs(app.add_subcommand("cut", "Gluing and lifting checks on symplectic cuts"));
  auto* quantize = with_inputs(app.add_subcommand("quantize", "Invariant quantization inequalities on cuts"));
  auto* reduce = with_inputs(app.add_subcommand("reduce-circle", "Compare a multiplicity with its circle reduction"));
  reduce->add_option("--xi", o.xi, "Weight as comma-separated integers")->required();
  auto* report = with_inputs(app.add_subcommand("report", "Run every check"));
  auto* generate = app.add_subcommand("generate-corpus", "Write the built-in scenarios as JSON");
  generate->add_option("--out", o.out_dir, "Output directory (default: the corpus directory)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : exit_input_error;
  }

  auto only = [](auto field) {
    CheckSet c{false, false, false, false, false, false, false};
    c.*field = true;
    return c;
  };
  try {
    if (*chambers) return cmd_chambers(o);
    if (*morse) return run_checks(o, only(&CheckSet::morse));
    if (*lefschetz) return run_checks(o, only(&CheckSet::lefschetz));
    if (*hodge) return run_checks(o, only(&CheckSet::hodge), true);
    if (*consistency) return run_checks(o, only(&CheckSet::consistency));
    if (*cut) return run_checks(o, only(&CheckSet::cut));
    if (*quantize) {
      CheckSet c = only(&CheckSet::quantization);
      c.mv_diagnostic = true;
      return run_checks(o, c);
    }
    if (*reduce) return cmd_reduce_circle(o);
    if (*report) return run_checks(o, CheckSet{});
    if (*generate) return cmd_generate_corpus(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input_error;
  }
  return exit_input_error;
}
