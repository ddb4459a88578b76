#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "amscheck/match.hpp"
#include "amscheck/online.hpp"
#include "amscheck/oracle.hpp"

namespace amscheck::tools {

inline constexpr const char* kReportSchema = "amscheck-report";
inline constexpr int kReportVersion = 1;

/// [lo, hi, lo_closed, hi_closed]
nlohmann::json interval_json(const Interval& iv);
nlohmann::json set_json(const IntervalSet& s);

struct ReportContext {
  std::string trace_path;
  Interval domain;
  std::size_t samples = 0;
  double time_tol = kDefaultTimeTol;
  double value_tol = kDefaultValueTol;
};

/// Versioned machine-readable report. Contains no timestamps or host data,
/// so identical inputs give byte-identical output.
nlohmann::json report_json(const std::vector<Property>& props,
                           const std::vector<MatchReport>& reports, const ReportContext& ctx);

nlohmann::json verdict_json(const Verdict& v);

/// Grid classes collapsed into runs of equal class.
nlohmann::json oracle_json(const Property& p, const OracleResult& r);

/// Fixed-width human summary, one row per assertion.
std::string summary_table(const std::vector<MatchReport>& reports);

}  // namespace amscheck::tools
