#pragma once

// JSON encoding of scenarios, cut scenarios, series and check reports.
// Integers are JSON numbers up to 2^53 in magnitude and decimal strings
// beyond; rationals are "p/q" strings.

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "eqmorse/character_ring.hpp"
#include "eqmorse/cut_quant.hpp"
#include "eqmorse/errors.hpp"
#include "eqmorse/fixed_point_model.hpp"
#include "eqmorse/hodge_polynomial.hpp"
#include "eqmorse/hodge_tools.hpp"
#include "eqmorse/lattice_chambers.hpp"
#include "eqmorse/morse_engine.hpp"

namespace eqmorse::io {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Encoding

inline Json encode(const Integer& z) {
  static const Integer limit = Integer(1) << 53;
  if (abs(z) <= limit) return Json(z.get_si());
  return Json(z.get_str());
}

inline Json encode(const Rational& q) { return Json(to_string(q)); }

inline Json encode(const Weight& w) { return Json(w.coords()); }

inline Json encode(const RationalVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(encode(x));
  return a;
}

inline Json encode(const TermMap& t) {
  Json a = Json::array();
  for (const auto& [w, m] : t) a.push_back(Json{{"weight", encode(w)}, {"mult", encode(m)}});
  return a;
}

inline Json encode(const HodgePolynomial& h) {
  Json a = Json::array();
  for (const auto& [key, v] : h.coeffs()) a.push_back(Json::array({key.first, key.second, v}));
  return a;
}

inline Json encode(const Window& w) {
  Json j;
  if (w.chamber->id() != Chamber::npos) j["chamber"] = w.chamber->id();
  j["direction"] = encode(w.chamber->direction());
  j["anchor"] = encode(w.anchor);
  j["depth"] = w.depth;
  return j;
}

inline Json encode(const CharacterSeries& s) {
  Json j;
  j["terms"] = encode(s.terms());
  if (s.window()) {
    j["window"] = encode(*s.window());
  } else {
    j["complete"] = true;
  }
  return j;
}

/// Finite polynomial as a list of term lists, one per degree.
inline Json encode_terms(const MorsePolynomial& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(encode(c.terms()));
  return a;
}

inline Json encode(const MorsePolynomial& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(encode(c));
  return a;
}

inline Json encode(const Chamber& c) {
  Json j;
  j["id"] = c.id();
  j["sample_point"] = encode(c.sample_point());
  j["direction"] = encode(c.direction());
  j["sign_vector"] = c.sign_vector();
  Json walls = Json::array();
  for (const auto& w : c.walls()) walls.push_back(encode(w));
  j["walls"] = walls;
  Json rays = Json::array();
  for (const auto& r : c.extreme_rays()) rays.push_back(encode(r));
  j["extreme_rays"] = rays;
  return j;
}

inline Json encode(const std::vector<ChamberRef>& cs) {
  Json a = Json::array();
  for (const auto& c : cs) a.push_back(encode(*c));
  return a;
}

inline Json encode(const CohomologyOverride& o) {
  Json j;
  j["direction"] = encode(o.direction);
  j["anchor"] = encode(o.anchor);
  j["depth"] = o.depth;
  Json d = Json::array();
  for (const auto& t : o.degrees) d.push_back(encode(t));
  j["degrees"] = d;
  return j;
}

inline Json encode(const FixedComponent& c) {
  Json j;
  j["name"] = c.name;
  j["dim"] = c.dim;
  Json ws = Json::array();
  for (const auto& w : c.weights) ws.push_back(encode(w));
  j["weights"] = ws;
  j["hodge"] = encode(c.hodge);
  j["e_char"] = encode(c.e_character.terms());
  if (c.moment) j["moment"] = encode(*c.moment);
  if (!c.overrides.empty()) {
    Json os = Json::array();
    for (const auto& o : c.overrides) os.push_back(encode(o));
    j["cohomology_override"] = os;
  }
  return j;
}

inline Json encode(const Scenario& s) {
  Json j;
  j["name"] = s.name;
  j["rank"] = s.rank;
  j["dim"] = s.dim;
  j["depth"] = s.depth;
  if (s.e_rank) j["e_rank"] = *s.e_rank;
  Json cs = Json::array();
  for (const auto& c : s.components) cs.push_back(encode(c));
  j["components"] = cs;
  if (s.m_cohomology) j["m_cohomology"] = encode_terms(*s.m_cohomology);
  if (s.m_hodge) j["m_hodge"] = encode(*s.m_hodge);
  return j;
}

inline Json encode(const CutScenario& cs) {
  Json j;
  j["kind"] = "cut";
  j["name"] = cs.name;
  j["parent"] = encode(cs.parent);
  j["reduced_hodge"] = encode(cs.reduced_hodge);
  j["reduced_dim"] = cs.reduced_dim;
  j["free_action"] = cs.free_action;
  if (cs.quantization) {
    Json q;
    q["m"] = encode_terms(cs.quantization->m_char);
    q["m_plus"] = encode_terms(cs.quantization->plus_char);
    q["m_minus"] = encode_terms(cs.quantization->minus_char);
    q["m0_dims"] = cs.quantization->reduced_dims;
    j["quantization"] = q;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Decoding, with the JSON path of the offending field in every error

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::ParseError, path + ": " + msg);
}

inline const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field '") + key + "'");
  return *it;
}

inline std::int64_t as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<std::int64_t>();
}

inline std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

inline Integer as_integer(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Integer(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) {
    Integer z;
    if (z.set_str(j.get<std::string>(), 10) != 0) fail(path, "malformed integer string");
    return z;
  }
  fail(path, "expected an integer or integer string");
}

inline Rational as_rational(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  if (!j.is_string()) fail(path, "expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

inline Weight as_weight(const Json& j, const std::string& path, std::size_t rank) {
  if (!j.is_array()) fail(path, "expected an integer array");
  std::vector<std::int64_t> c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(as_int(j[i], path + "[" + std::to_string(i) + "]"));
  if (c.size() != rank) fail(path, "expected " + std::to_string(rank) + " coordinates, got " + std::to_string(c.size()));
  return Weight(std::move(c));
}

inline TermMap as_terms(const Json& j, const std::string& path, std::size_t rank) {
  if (!j.is_array()) fail(path, "expected a list of {weight, mult}");
  TermMap t;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string p = path + "[" + std::to_string(i) + "]";
    Weight w = as_weight(field(j[i], "weight", p), p + ".weight", rank);
    t[w] += as_integer(field(j[i], "mult", p), p + ".mult");
  }
  return t;
}

inline HodgePolynomial as_hodge(const Json& j, const std::string& path, int dim) {
  if (!j.is_array()) fail(path, "expected a list of [k, l, h]");
  HodgePolynomial h(dim);
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string p = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 3) fail(p, "expected [k, l, h]");
    h.add(static_cast<int>(as_int(j[i][0], p)), static_cast<int>(as_int(j[i][1], p)), as_int(j[i][2], p));
  }
  return h;
}

inline MorsePolynomial as_polynomial(const Json& j, const std::string& path, std::size_t rank) {
  if (!j.is_array()) fail(path, "expected a list of per-degree term lists");
  MorsePolynomial p(rank);
  for (std::size_t k = 0; k < j.size(); ++k) {
    p.set(k, CharacterSeries::from_terms(rank, as_terms(j[k], path + "[" + std::to_string(k) + "]", rank)));
  }
  return p;
}

}  // namespace detail

/// Scenario from JSON; structural problems raise ParseError, mathematical
/// ones are left to validate_scenario.
inline Scenario decode_scenario(const Json& j, const std::string& path = "$") {
  using namespace detail;
  Scenario s;
  s.name = j.contains("name") ? as_string(j["name"], path + ".name") : "unnamed";
  std::int64_t rank = as_int(field(j, "rank", path), path + ".rank");
  if (rank < 1) fail(path + ".rank", "rank must be positive");
  s.rank = static_cast<std::size_t>(rank);
  s.dim = static_cast<int>(as_int(field(j, "dim", path), path + ".dim"));
  if (j.contains("depth")) s.depth = as_int(j["depth"], path + ".depth");
  if (j.contains("e_rank")) s.e_rank = as_int(j["e_rank"], path + ".e_rank");
  const Json& comps = field(j, "components", path);
  if (!comps.is_array()) fail(path + ".components", "expected an array");
  for (std::size_t i = 0; i < comps.size(); ++i) {
    std::string p = path + ".components[" + std::to_string(i) + "]";
    const Json& cj = comps[i];
    FixedComponent c;
    c.name = cj.contains("name") ? as_string(cj["name"], p + ".name") : "F" + std::to_string(i + 1);
    c.dim = static_cast<int>(as_int(field(cj, "dim", p), p + ".dim"));
    if (c.dim < 0 || c.dim > HodgePolynomial::max_dim) fail(p + ".dim", "dimension out of range");
    const Json& ws = field(cj, "weights", p);
    if (!ws.is_array()) fail(p + ".weights", "expected an array of weights");
    for (std::size_t k = 0; k < ws.size(); ++k) {
      c.weights.push_back(as_weight(ws[k], p + ".weights[" + std::to_string(k) + "]", s.rank));
    }
    c.hodge = cj.contains("hodge") ? as_hodge(cj["hodge"], p + ".hodge", c.dim)
                                   : (c.dim == 0 ? HodgePolynomial::point() : HodgePolynomial(c.dim));
    c.e_character = cj.contains("e_char")
                        ? CharacterSeries::from_terms(s.rank, as_terms(cj["e_char"], p + ".e_char", s.rank))
                        : CharacterSeries::monomial(Weight::zero(s.rank));
    if (cj.contains("moment")) c.moment = as_rational(cj["moment"], p + ".moment");
    if (cj.contains("cohomology_override")) {
      const Json& os = cj["cohomology_override"];
      if (!os.is_array()) fail(p + ".cohomology_override", "expected an array");
      for (std::size_t k = 0; k < os.size(); ++k) {
        std::string op = p + ".cohomology_override[" + std::to_string(k) + "]";
        CohomologyOverride o;
        o.direction = as_weight(field(os[k], "direction", op), op + ".direction", s.rank);
        o.anchor = as_weight(field(os[k], "anchor", op), op + ".anchor", s.rank);
        o.depth = as_int(field(os[k], "depth", op), op + ".depth");
        const Json& ds = field(os[k], "degrees", op);
        if (!ds.is_array()) fail(op + ".degrees", "expected an array");
        for (std::size_t d = 0; d < ds.size(); ++d) {
          o.degrees.push_back(as_terms(ds[d], op + ".degrees[" + std::to_string(d) + "]", s.rank));
        }
        c.overrides.push_back(std::move(o));
      }
    }
    s.components.push_back(std::move(c));
  }
  if (j.contains("m_cohomology") && !j["m_cohomology"].is_null()) {
    s.m_cohomology = as_polynomial(j["m_cohomology"], path + ".m_cohomology", s.rank);
  }
  if (j.contains("m_hodge")) s.m_hodge = as_hodge(j["m_hodge"], path + ".m_hodge", s.dim);
  return s;
}

inline CutScenario decode_cut(const Json& j, const std::string& path = "$") {
  using namespace detail;
  Scenario parent = decode_scenario(field(j, "parent", path), path + ".parent");
  require_valid(parent);
  int rdim = j.contains("reduced_dim") ? static_cast<int>(as_int(j["reduced_dim"], path + ".reduced_dim"))
                                       : parent.dim - 1;
  HodgePolynomial reduced = as_hodge(field(j, "reduced_hodge", path), path + ".reduced_hodge", rdim);
  bool free_action = j.contains("free_action") ? j["free_action"].get<bool>() : true;
  if (!free_action) {
    throw Error(ErrorCode::ValidationError, "cut '" + parent.name + "': the circle must act freely on the level set");
  }
  std::string name = j.contains("name") ? as_string(j["name"], path + ".name") : parent.name + "_cut";
  CutScenario cs = build_cut_scenarios(parent, reduced, name);
  cs.free_action = free_action;
  if (j.contains("quantization")) {
    const Json& q = j["quantization"];
    std::string qp = path + ".quantization";
    QuantizationData qd;
    qd.m_char = as_polynomial(field(q, "m", qp), qp + ".m", 1);
    qd.plus_char = as_polynomial(field(q, "m_plus", qp), qp + ".m_plus", 1);
    qd.minus_char = as_polynomial(field(q, "m_minus", qp), qp + ".m_minus", 1);
    const Json& dims = field(q, "m0_dims", qp);
    if (!dims.is_array()) fail(qp + ".m0_dims", "expected an integer array");
    for (std::size_t k = 0; k < dims.size(); ++k) {
      qd.reduced_dims.push_back(as_int(dims[k], qp + ".m0_dims[" + std::to_string(k) + "]"));
    }
    cs.quantization = std::move(qd);
  }
  return cs;
}

using Document = std::variant<Scenario, CutScenario>;

inline bool is_cut(const Json& j) { return j.is_object() && j.contains("kind") && j["kind"] == "cut"; }

inline Json parse_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, origin + ": " + e.what());
  }
}

/// Parses and validates; validation errors are fatal.
inline Document load_document_text(const std::string& text, const std::string& origin = "<input>") {
  Json j = parse_text(text, origin);
  if (is_cut(j)) return decode_cut(j);
  Scenario s = decode_scenario(j);
  require_valid(s);
  return s;
}

inline Document load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_document_text(ss.str(), path);
}

inline Scenario load_scenario(const std::string& path) {
  auto d = load_document(path);
  if (auto* s = std::get_if<Scenario>(&d)) return *s;
  throw Error(ErrorCode::ValidationError, path + " describes a cut, not a scenario");
}

// ---------------------------------------------------------------------------
// Reports

inline Json encode(const MorseReport& r) {
  Json j;
  j["chamber"] = r.chamber_id;
  j["window"] = r.window ? encode(*r.window) : Json("complete");
  Json q = Json::array();
  for (const auto& c : r.q_poly.coeffs()) q.push_back(encode(c.terms()));
  j["q_coefficients"] = q;
  j["remainder"] = encode(r.remainder.terms());
  j["nonneg"] = r.nonneg;
  j["remainder_zero"] = r.remainder_zero;
  Json v = Json::array();
  for (const auto& [w, m] : r.remainder.terms()) {
    v.push_back(Json{{"kind", "remainder"}, {"weight", encode(w)}, {"mult", encode(m)}});
  }
  if (r.first_violation) {
    v.push_back(Json{{"kind", "negative_quotient"},
                     {"degree", r.first_violation->degree},
                     {"weight", encode(r.first_violation->weight)},
                     {"mult", encode(r.first_violation->mult)}});
  }
  j["violations"] = v;
  return j;
}

inline Json encode(const std::vector<WeakRow>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) {
    Json j{{"degree", r.degree}, {"holds", r.holds}};
    if (r.violation) j["violation"] = encode(*r.violation);
    a.push_back(j);
  }
  return a;
}

inline Json encode(const LefschetzReport& r) {
  Json j;
  Json cs = Json::array();
  for (const auto& c : r.chambers) {
    cs.push_back(Json{{"chamber", c.chamber_id},
                      {"specialized_lhs", encode(c.specialized_lhs)},
                      {"residual", encode(c.residual.terms())},
                      {"matches", c.matches}});
  }
  j["chambers"] = cs;
  j["chamber_independent"] = r.chamber_independent;
  if (r.cross_disagreement) {
    auto [a, b, w] = *r.cross_disagreement;
    j["cross_disagreement"] = Json{{"chambers", {a, b}}, {"weight", encode(w)}};
  }
  j["passed"] = r.passed();
  return j;
}

/// Hodge diamond as a (dim+1) x (dim+1) matrix, rows k, columns l.
inline Json hodge_matrix(const HodgePolynomial& h) {
  Json m = Json::array();
  for (int k = 0; k <= h.dim(); ++k) {
    Json row = Json::array();
    for (int l = 0; l <= h.dim(); ++l) row.push_back(h.at(k, l));
    m.push_back(row);
  }
  return m;
}

inline std::string hodge_markdown(const HodgePolynomial& h) {
  std::ostringstream os;
  os << "| k\\l |";
  for (int l = 0; l <= h.dim(); ++l) os << ' ' << l << " |";
  os << "\n|---|";
  for (int l = 0; l <= h.dim(); ++l) os << "---|";
  os << '\n';
  for (int k = 0; k <= h.dim(); ++k) {
    os << "| " << k << " |";
    for (int l = 0; l <= h.dim(); ++l) os << ' ' << h.at(k, l) << " |";
    os << '\n';
  }
  return os.str();
}

inline Json encode(const ConsistencyReport& r) {
  Json j;
  Json pairs = Json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back(Json{{"chamber", p.chamber}, {"opposite", p.opposite}, {"residual", encode(p.residual)}});
  }
  j["pairs"] = pairs;
  j["pairs_ok"] = r.pairs_ok;
  j["all_equal"] = r.all_equal;
  j["passed"] = r.passed();
  return j;
}

inline Json encode(const ToddReport& r) {
  return Json{{"minimum", r.minimum},         {"h0k_manifold", r.h0k_manifold},
              {"h0k_component", r.h0k_component}, {"todd_manifold", r.todd_manifold},
              {"todd_component", r.todd_component}, {"passed", r.passed}};
}

inline Json encode(const PerfectMorseReport& r) {
  return Json{{"fixed_side", r.fixed_side}, {"manifold", r.manifold}, {"passed", r.passed}};
}

inline Json encode(const GlueReport& r) {
  return Json{{"P_M", encode(r.parent)},
              {"P_M_plus", encode(r.plus)},
              {"P_M_minus", encode(r.minus)},
              {"residual", encode(r.residual)},
              {"glue_holds", r.glue_holds},
              {"h0k_M", r.h0k_parent},
              {"h0k_M0", r.h0k_reduced},
              {"corollary_holds", r.corollary_holds},
              {"passed", r.passed()}};
}

inline Json encode(const LiftReport& r) {
  Json j{{"liftable", r.liftable}, {"consistent", r.consistent}, {"fiber_weights", r.fiber_weights}};
  if (r.shift) j["shift"] = encode(*r.shift);
  return j;
}

inline Json encode_ints(const std::vector<Integer>& v) {
  Json a = Json::array();
  for (const auto& z : v) a.push_back(encode(z));
  return a;
}

inline Json encode(const QuantizationReport& r) {
  auto side = [](const QuantizationSide& s) {
    return Json{{"invariant_dims", encode_ints(s.invariant)},
                {"q", encode_ints(s.q)},
                {"remainder", encode(s.remainder)},
                {"nonneg", s.nonneg},
                {"passed", s.passed()}};
  };
  return Json{{"plus", side(r.plus)},
              {"minus", side(r.minus)},
              {"m0_dims", encode_ints(r.reduced)},
              {"invariant_dims_M", encode_ints(r.invariant_parent)},
              {"euler", Json{{"M_plus", encode(r.euler_plus)},
                             {"M_minus", encode(r.euler_minus)},
                             {"M0", encode(r.euler_reduced)},
                             {"M", encode(r.euler_parent)}}},
              {"com_holds", r.com_holds},
              {"fiber_weights_match_moments", r.fiber_weights_match},
              {"passed", r.passed()}};
}

inline Json encode(const MayerVietorisReport& r) {
  Json q = Json::array();
  for (const auto& c : r.q.coeffs()) q.push_back(encode(c.terms()));
  return Json{{"label", MayerVietorisReport::label},
              {"q_coefficients", q},
              {"remainder_zero", r.remainder_zero},
              {"nonneg", r.nonneg},
              {"bounded_by_M0", r.bounded},
              {"consistent", r.consistent()}};
}

inline Json encode(const ReductionCheck& r) {
  return Json{{"xi", encode(r.xi)},
              {"v", encode(r.v)},
              {"anchor", encode(r.anchor)},
              {"torus_depth", r.torus_depth},
              {"circle_depth", r.circle_depth},
              {"torus_mults", encode_ints(r.torus_mults)},
              {"circle_mults", encode_ints(r.circle_mults)},
              {"agree", r.agree}};
}

}  // namespace eqmorse::io
