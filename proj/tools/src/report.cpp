#include "amscheck_tools/report.hpp"

#include <cstdio>
#include <sstream>

namespace amscheck::tools {

using nlohmann::json;

json interval_json(const Interval& iv) { return json::array({iv.lo, iv.hi, iv.lo_closed, iv.hi_closed}); }

json set_json(const IntervalSet& s) {
  json out = json::array();
  for (const auto& iv : s) out.push_back(interval_json(iv));
  return out;
}

json report_json(const std::vector<Property>& props, const std::vector<MatchReport>& reports,
                 const ReportContext& ctx) {
  json doc;
  doc["schema"] = kReportSchema;
  doc["version"] = kReportVersion;
  doc["trace"] = {{"path", ctx.trace_path},
                  {"domain", json::array({ctx.domain.lo, ctx.domain.hi})},
                  {"samples", ctx.samples}};
  doc["options"] = {{"time_tol", ctx.time_tol}, {"value_tol", ctx.value_tol}};
  json list = json::array();
  std::size_t failing = 0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    if (!r.fail.empty()) ++failing;
    list.push_back({{"name", r.name},
                    {"property", to_string(props[i])},
                    {"horizon", r.horizon},
                    {"nonvacuous", set_json(r.nonvacuous)},
                    {"vacuous", set_json(r.vacuous)},
                    {"fail", set_json(r.fail)},
                    {"undetermined", set_json(r.undetermined)}});
  }
  doc["assertions"] = std::move(list);
  doc["summary"] = {{"assertions", reports.size()}, {"failing", failing}};
  return doc;
}

json verdict_json(const Verdict& v) {
  return {{"assertion", v.assertion},
          {"kind", to_string(v.kind)},
          {"interval", interval_json(v.interval)},
          {"decided_at", v.decided_at}};
}

json oracle_json(const Property& p, const OracleResult& r) {
  json runs = json::array();
  std::size_t i = 0;
  while (i < r.classes.size()) {
    std::size_t j = i;
    while (j + 1 < r.classes.size() && r.classes[j + 1] == r.classes[i]) ++j;
    runs.push_back({{"from", r.times[i]}, {"to", r.times[j]}, {"class", to_string(r.classes[i])},
                    {"points", j - i + 1}});
    i = j + 1;
  }
  return {{"assertion", p.name}, {"dt", r.dt}, {"runs", std::move(runs)}};
}

std::string summary_table(const std::vector<MatchReport>& reports) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-24s %8s %8s %8s %8s  %s\n", "assertion", "match", "vacuous",
                "fail", "undet", "status");
  os << line;
  for (const auto& r : reports) {
    const char* status = !r.fail.empty() ? "FAIL" : (!r.undetermined.empty() ? "OPEN" : "ok");
    std::snprintf(line, sizeof line, "%-24s %8zu %8zu %8zu %8zu  %s\n", r.name.c_str(),
                  r.nonvacuous.size(), r.vacuous.size(), r.fail.size(), r.undetermined.size(),
                  status);
    os << line;
    for (const auto& iv : r.fail) os << "    fail at " << to_string(iv) << "\n";
  }
  return os.str();
}

}  // namespace amscheck::tools
