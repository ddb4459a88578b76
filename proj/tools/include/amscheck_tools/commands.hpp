#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "amscheck/ast.hpp"
#include "amscheck/interval.hpp"

namespace amscheck::tools {

// Process exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitError = 2;

/// Parses an assertion file and keeps the properties whose name matches the
/// shell-style `filter` (empty keeps all). Throws amscheck::Error, including
/// when nothing is left.
std::vector<Property> load_assertions(const std::string& path, double value_tol,
                                      const std::string& filter = {});

struct CheckOptions {
  std::string trace_path;
  std::string assertion_path;
  double time_tol = kDefaultTimeTol;
  double value_tol = kDefaultValueTol;
  std::optional<std::string> report_path;
  std::string assert_name;
  bool json = false;  // print the JSON report instead of the summary table
};
int cmd_check(const CheckOptions& opts, std::ostream& out, std::ostream& err);

struct StreamOptions {
  std::string assertion_path;
  std::vector<std::string> signals;  // empty: read a `time <sig>...` header line
  std::vector<std::string> bool_signals;
  double time_tol = kDefaultTimeTol;
  double value_tol = kDefaultValueTol;
  std::string assert_name;
};
/// Reads `t v1 v2 ...` lines (blank- or comma-separated, `#` comments) and
/// writes one JSON object per verdict, then a summary object.
int cmd_stream(const StreamOptions& opts, std::istream& in, std::ostream& out, std::ostream& err);

struct OracleOptionsCli {
  std::string trace_path;
  std::string assertion_path;
  std::optional<double> dt;  // default: min(smallest bound / 20, smallest sample spacing)
  double value_tol = kDefaultValueTol;
  std::string assert_name;
  bool force = false;
};
int cmd_oracle(const OracleOptionsCli& opts, std::ostream& out, std::ostream& err);

struct CodegenOptionsCli {
  std::string assertion_path;
  int first_id = 0;
  double time_acc = 1e-9;
  double value_acc = 1e-6;
  double value_tol = kDefaultValueTol;
  std::optional<std::string> out_path;
  std::string assert_name;
  bool module = false;  // wrap each property's monitors in `<name>_monitor`
};
int cmd_codegen(const CodegenOptionsCli& opts, std::ostream& out, std::ostream& err);

struct GenwaveOptions {
  std::string spec_path;
  std::optional<std::string> out_path;
};
int cmd_genwave(const GenwaveOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace amscheck::tools
