#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "dulac/analyze.hpp"
#include "dulac/certify.hpp"
#include "dulac/flow.hpp"

namespace dulac {

using Json = nlohmann::json;

/// Serialized view of a Certificate; rationals are kept as exact text.
struct CertificateRecord {
  std::string outcome;
  std::string carrier;
  std::optional<std::array<std::string, 2>> witness;
  int depth = 0;

  friend bool operator==(const CertificateRecord&, const CertificateRecord&) = default;
};

CertificateRecord record_of(const Certificate& c);

/// Re-runs positivity on the recorded carrier; the verdict must match.
Certificate recheck(const CertificateRecord& record, const Box2& box, int max_depth = kDefaultMaxDepth);

/// {"system", "command", "result", "certificate", "notes"}.
struct Report {
  std::string system;
  std::string command;
  Json result = Json::object();
  std::optional<CertificateRecord> certificate;
  std::vector<std::string> notes;

  friend bool operator==(const Report&, const Report&) = default;
};

Json to_json(const Report& r);
/// Throws Syntax when a required key is missing or has the wrong type.
Report report_from_json(const Json& j);
std::string serialize(const Report& r);
Report parse_report(std::string_view text);

Json to_json(const Box2& b);
Json to_json(const EquilibriumReport& e);
/// Summary without the sampled points.
Json to_json(const LimitCycleReport& c);
Json to_json(const AnalysisReport& a);

}  // namespace dulac
