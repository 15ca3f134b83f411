#include "dulac/report.hpp"

#include <cmath>

#include "dulac/error.hpp"
#include "dulac/parse.hpp"

namespace dulac {

CertificateRecord record_of(const Certificate& c) {
  CertificateRecord r;
  r.outcome = c.outcome_name();
  r.carrier = to_string(c.carrier);
  r.depth = c.depth();
  if (const auto* v = std::get_if<Violation>(&c.outcome)) r.witness = std::array<std::string, 2>{to_string(v->x), to_string(v->y)};
  return r;
}

Certificate recheck(const CertificateRecord& record, const Box2& box, int max_depth) {
  return certify_positive(parse_poly(record.carrier), box, max_depth);
}

namespace {

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json point(Point z) { return Json::array({number(z.x), number(z.y)}); }

Json certificate_json(const CertificateRecord& c) {
  Json j{{"outcome", c.outcome}, {"carrier", c.carrier}, {"depth", c.depth}};
  j["witness"] = c.witness ? Json::array({(*c.witness)[0], (*c.witness)[1]}) : Json(nullptr);
  return j;
}

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorKind::Syntax, "report: " + what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("missing key '") + key + "'");
  return j.at(key);
}

std::string text_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) schema(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

Json to_json(const Report& r) {
  Json j;
  j["system"] = r.system;
  j["command"] = r.command;
  j["result"] = r.result;
  j["certificate"] = r.certificate ? certificate_json(*r.certificate) : Json(nullptr);
  j["notes"] = r.notes;
  return j;
}

Report report_from_json(const Json& j) {
  Report r;
  r.system = text_field(j, "system");
  r.command = text_field(j, "command");
  r.result = field(j, "result");
  const Json& notes = field(j, "notes");
  if (!notes.is_array()) schema("'notes' must be an array");
  for (const auto& n : notes) {
    if (!n.is_string()) schema("notes must be strings");
    r.notes.push_back(n.get<std::string>());
  }
  const Json& c = field(j, "certificate");
  if (!c.is_null()) {
    CertificateRecord rec;
    rec.outcome = text_field(c, "outcome");
    if (rec.outcome != "positive" && rec.outcome != "violation" && rec.outcome != "inconclusive")
      schema("unknown outcome '" + rec.outcome + "'");
    rec.carrier = text_field(c, "carrier");
    const Json& d = field(c, "depth");
    if (!d.is_number_integer()) schema("'depth' must be an integer");
    rec.depth = d.get<int>();
    const Json& w = field(c, "witness");
    if (!w.is_null()) {
      if (!w.is_array() || w.size() != 2 || !w[0].is_string() || !w[1].is_string()) schema("'witness' must be two strings");
      rec.witness = std::array<std::string, 2>{w[0].get<std::string>(), w[1].get<std::string>()};
    }
    r.certificate = std::move(rec);
  }
  return r;
}

std::string serialize(const Report& r) { return to_json(r).dump(2) + "\n"; }

Report parse_report(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::Syntax, std::string("report: ") + e.what());
  }
  return report_from_json(j);
}

Json to_json(const Box2& b) { return to_string(b); }

Json to_json(const EquilibriumReport& e) {
  Json eig = Json::array();
  for (const auto& l : e.eigenvalues) eig.push_back(Json::array({number(l.real()), number(l.imag())}));
  return Json{{"location", point(e.location)},
              {"jacobian", Json::array({Json::array({number(e.jacobian[0]), number(e.jacobian[1])}),
                                        Json::array({number(e.jacobian[2]), number(e.jacobian[3])})})},
              {"eigenvalues", eig},
              {"classification", to_string(e.classification)},
              {"stability", to_string(e.stability)},
              {"hyperbolic", e.hyperbolic}};
}

Json to_json(const LimitCycleReport& c) {
  return Json{{"period", number(c.period)},
              {"amplitude_x", number(c.amplitude_x)},
              {"return_map_slope", number(c.return_map_slope)},
              {"stability", to_string(c.stability)},
              {"non_isolated", c.non_isolated},
              {"section_point", point(c.section_point)},
              {"iterations", c.iterations},
              {"points", c.points.size()}};
}

Json to_json(const AnalysisReport& a) {
  Json j;
  j["region"] = to_json(a.region);
  j["equilibria"] = Json::array();
  for (const auto& e : a.equilibria) j["equilibria"].push_back(to_json(e));
  j["local_certificates"] = Json::array();
  for (const auto& lc : a.local_certificates)
    j["local_certificates"].push_back(Json{{"equilibrium", point(lc.equilibrium.location)},
                                           {"multiplier", to_string(lc.multiplier)},
                                           {"box", to_json(lc.box)},
                                           {"puncture_half_width", to_string(lc.puncture_half_width)},
                                           {"certificate", certificate_json(record_of(lc.certificate))}});
  j["global_boxes_certified"] = Json::array();
  for (std::size_t i = 0; i < a.global_boxes_certified.size(); ++i)
    j["global_boxes_certified"].push_back(
        Json{{"box", to_json(a.global_boxes_certified[i])}, {"certificate", certificate_json(record_of(a.global_certificates[i]))}});
  j["uncovered_regions"] = Json::array();
  for (const auto& b : a.uncovered_regions) j["uncovered_regions"].push_back(to_json(b));
  j["limit_cycles"] = Json::array();
  for (const auto& c : a.limit_cycles) j["limit_cycles"].push_back(to_json(c));
  j["exit_code"] = a.exit_code();
  return j;
}

}  // namespace dulac
