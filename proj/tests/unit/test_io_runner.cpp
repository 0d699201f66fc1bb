#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "eqmorse/corpus.hpp"
#include "eqmorse/json_io.hpp"
#include "eqmorse/runner.hpp"

using namespace eqmorse;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<io::Document> corpus_documents() {
  std::vector<io::Document> docs;
  for (const auto& s : corpus::scenarios()) docs.emplace_back(s);
  for (const auto& c : corpus::cuts()) docs.emplace_back(c);
  return docs;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::Unsupported;
}

}  // namespace

TEST(Load, ShippedSphere) {
  Scenario s = io::load_scenario(std::string(EQMORSE_DEFAULT_CORPUS) + "/cp1.json");
  EXPECT_EQ(s.rank, 1u);
  EXPECT_EQ(s.components.size(), 2u);
  EXPECT_EQ(canonical_string(s), canonical_string(corpus::cp1()));
}

TEST(Load, ZeroWeightIsAValidationError) {
  try {
    (void)io::load_document(std::string(EQMORSE_TEST_DATA) + "/zero_weight.json");
    FAIL() << "accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ValidationError);
    EXPECT_NE(std::string(e.what()).find("ZeroIsotropyWeight"), std::string::npos);
  }
}

TEST(Load, MalformedJsonReportsLine) {
  try {
    (void)io::load_document(std::string(EQMORSE_TEST_DATA) + "/malformed.json");
    FAIL() << "accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("line"), std::string::npos);
  }
}

TEST(Load, FieldPathInErrors) {
  const char* text = R"({"rank": 1, "dim": 1, "components": [{"dim": 0, "weights": [["x"]]}]})";
  try {
    (void)io::load_document_text(text);
    FAIL() << "accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("$.components[0].weights[0][0]"), std::string::npos) << e.what();
  }
  EXPECT_EQ(code_of([] { (void)io::load_document_text(R"({"dim": 1, "components": []})"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { (void)io::load_document_text(R"({"rank": 2, "dim": 1, "components": [{"dim": 0, "weights": [[1]]}]})"); }),
            ErrorCode::ParseError);
}

TEST(Load, RejectsNonFreeCuts) {
  io::Json j = io::encode(corpus::cp1_cut());
  j["free_action"] = false;
  EXPECT_EQ(code_of([&] { (void)io::decode_cut(j); }), ErrorCode::ValidationError);
}

TEST(RoundTrip, ScenariosAndCuts) {
  for (const auto& s : corpus::scenarios()) {
    io::Json j = io::encode(s);
    Scenario back = io::decode_scenario(io::Json::parse(j.dump()));
    EXPECT_EQ(canonical_string(back), canonical_string(s)) << s.name;
    EXPECT_EQ(io::encode(back), j);
  }
  for (const auto& c : corpus::cuts()) {
    io::Json j = io::encode(c);
    CutScenario back = io::decode_cut(io::Json::parse(j.dump()));
    EXPECT_EQ(io::encode(back), j) << c.name;
    EXPECT_EQ(canonical_string(back.plus), canonical_string(c.plus));
  }
}

TEST(RoundTrip, LargeMultiplicitiesBecomeStrings) {
  Integer big;
  big.set_str("123456789012345678901234567890", 10);
  TermMap t{{Weight{-1}, big}, {Weight{0}, Integer(7)}};
  io::Json j = io::encode(t);
  EXPECT_TRUE(j[0]["mult"].is_string());
  EXPECT_TRUE(j[1]["mult"].is_number_integer());
  EXPECT_EQ(io::detail::as_terms(j, "$", 1), t);
}

TEST(Corpus, FilesMatchGenerators) {
  std::filesystem::path dir = EQMORSE_DEFAULT_CORPUS;
  for (const auto& s : corpus::scenarios()) {
    EXPECT_EQ(slurp(dir / (s.name + ".json")), io::encode(s).dump(2) + "\n") << s.name;
  }
  for (const auto& c : corpus::cuts()) {
    EXPECT_EQ(slurp(dir / (c.name + ".json")), io::encode(c).dump(2) + "\n") << c.name;
  }
}

TEST(Runner, CorpusPassesAndIsDeterministic) {
  RunConfig cfg;
  cfg.inputs = corpus_documents();
  auto a = run_report(cfg);
  EXPECT_EQ(a.exit_code, exit_pass) << a.text;
  EXPECT_EQ(a.failures, 0u);
  cfg.jobs = 3;
  auto b = run_report(cfg);
  EXPECT_EQ(a.text, b.text);
  EXPECT_EQ(a.report.dump(), b.report.dump());
  auto again = run_report(cfg);
  EXPECT_EQ(b.report.dump(2), again.report.dump(2));
}

TEST(Runner, ReportJsonRoundTrips) {
  RunConfig cfg;
  cfg.inputs = corpus_documents();
  auto r = run_report(cfg);
  EXPECT_EQ(io::Json::parse(r.report.dump()), r.report);
  EXPECT_EQ(io::Json::parse(r.report.dump(2)).dump(2), r.report.dump(2));
}

TEST(Runner, FabricatedCohomologyIsLocated) {
  Scenario s = corpus::cp1();
  s.m_cohomology->set(0, CharacterSeries::monomial(Weight{-3}, 2));
  RunConfig cfg;
  cfg.inputs = {s};
  cfg.checks = CheckSet{true, false, false, false, false, false, false};
  auto r = run_report(cfg);
  EXPECT_EQ(r.exit_code, exit_violation);
  const auto& morse = r.report["items"][0]["chambers"][0]["morse"];
  ASSERT_FALSE(morse["violations"].empty());
  EXPECT_EQ(morse["violations"][0]["weight"], io::Json::array({-3}));
}

TEST(Runner, DiagnosticNeverGates) {
  CutScenario cs = corpus::cp1_cut();
  MorsePolynomial big(1);
  big.set(1, CharacterSeries::monomial(Weight{0}, 2));
  cs.quantization->m_char = cs.quantization->m_char + big;
  RunConfig cfg;
  cfg.inputs = {cs};
  cfg.checks = CheckSet{false, false, false, false, false, false, true};
  auto r = run_report(cfg);
  EXPECT_EQ(r.exit_code, exit_pass);
  EXPECT_FALSE(r.warnings.empty());
  EXPECT_NE(r.text.find("CONJECTURE DIAGNOSTIC"), std::string::npos);
}

TEST(Runner, ConfigValidation) {
  RunConfig cfg;
  cfg.inputs = {corpus::cp1()};
  cfg.depth = 0;
  EXPECT_EQ(code_of([&] { (void)run_report(cfg); }), ErrorCode::ValidationError);
  cfg.depth = 5;
  cfg.checks = CheckSet{false, false, false, false, false, false, false};
  EXPECT_EQ(code_of([&] { (void)run_report(cfg); }), ErrorCode::ValidationError);
  cfg.checks = CheckSet{};
  cfg.chamber_ids = {7};
  EXPECT_EQ(code_of([&] { (void)run_report(cfg); }), ErrorCode::ValidationError);
}

TEST(Runner, ChamberSelectionAndDepthOverride) {
  RunConfig cfg;
  cfg.inputs = {corpus::cp_n_torus(2)};
  cfg.chamber_ids = {2};
  cfg.depth = 6;
  auto r = run_report(cfg);
  EXPECT_EQ(r.exit_code, exit_pass);
  const auto& item = r.report["items"][0];
  ASSERT_EQ(item["chambers"].size(), 1u);
  EXPECT_EQ(item["chambers"][0]["id"], 2);
  EXPECT_EQ(item["chambers"][0]["morse"]["window"]["depth"], 6);
}
