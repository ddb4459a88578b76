#include "amscheck_tools/commands.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "amscheck/analysis.hpp"
#include "amscheck/codegen.hpp"
#include "amscheck/errors.hpp"
#include "amscheck/match.hpp"
#include "amscheck/online.hpp"
#include "amscheck/oracle.hpp"
#include "amscheck/parser.hpp"
#include "amscheck/trace.hpp"
#include "amscheck_tools/genwave.hpp"
#include "amscheck_tools/report.hpp"

namespace amscheck::tools {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::optional<std::string>& path, const std::string& text, std::ostream& out) {
  if (!path) {
    out << text;
    return;
  }
  std::ofstream f(*path, std::ios::binary);
  if (!f) throw Error("cannot write '" + *path + "'");
  f << text;
  if (!f) throw Error("write to '" + *path + "' failed");
}

void report_error(std::ostream& err, const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e) != nullptr) {
    err << "amscheck: parse error at " << e.what() << '\n';
    return;
  }
  err << "amscheck: " << e.what() << '\n';
}

// Splits on blanks and commas, dropping empty fields.
std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',' || c == ' ' || c == '\t' || c == '\r') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

bool parse_double(const std::string& s, double& v) {
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  return ec == std::errc() && p == end;
}

}  // namespace

std::vector<Property> load_assertions(const std::string& path, double value_tol,
                                      const std::string& filter) {
  ParseOptions po;
  po.value_tol = value_tol;
  std::vector<Property> all = parse_assertion_file(read_file(path), po);
  std::vector<Property> kept;
  for (auto& p : all) {
    if (filter.empty() || fnmatch(filter.c_str(), p.name.c_str(), 0) == 0) kept.push_back(std::move(p));
  }
  if (kept.empty()) {
    throw Error(filter.empty() ? "no assertions in '" + path + "'"
                               : "no assertion in '" + path + "' matches '" + filter + "'");
  }
  return kept;
}

int cmd_check(const CheckOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const Trace tr = load_csv(opts.trace_path);
    const std::vector<Property> props =
        load_assertions(opts.assertion_path, opts.value_tol, opts.assert_name);
    EvalOptions eo;
    eo.time_tol = opts.time_tol;
    const AtomTable tab = build_atom_table(tr, std::span<const Property>(props), eo);

    // The table is read-only from here on; each assertion gets its own
    // evaluator and end-match cache.
    std::vector<std::future<MatchReport>> jobs;
    for (const auto& p : props) {
      jobs.push_back(std::async(std::launch::async, [&tab, &p] { return assertion_match(p, tab); }));
    }
    std::vector<MatchReport> reports;
    for (auto& j : jobs) reports.push_back(j.get());

    ReportContext ctx{opts.trace_path, tr.domain(), tr.size(), opts.time_tol, opts.value_tol};
    const json doc = report_json(props, reports, ctx);
    if (opts.report_path) write_text(opts.report_path, doc.dump(2) + "\n", out);
    if (opts.json) {
      out << doc.dump(2) << '\n';
    } else {
      out << summary_table(reports);
    }
    const bool failed = std::any_of(reports.begin(), reports.end(),
                                    [](const MatchReport& r) { return !r.fail.empty(); });
    return failed ? kExitFail : kExitOk;
  } catch (const std::exception& e) {
    report_error(err, e);
    return kExitError;
  }
}

int cmd_stream(const StreamOptions& opts, std::istream& in, std::ostream& out, std::ostream& err) {
  std::size_t lineno = 0;
  try {
    std::vector<Property> props = load_assertions(opts.assertion_path, opts.value_tol, opts.assert_name);
    std::vector<std::string> names = opts.signals;
    std::string line;

    // Without --signals the first data-bearing line must be a header.
    if (names.empty()) {
      while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto fields = split_fields(line);
        if (fields.empty()) continue;
        if (fields[0] != "time" && fields[0] != "t") {
          throw TraceError("line " + std::to_string(lineno) +
                           ": expected a 'time <signal>...' header or --signals");
        }
        names.assign(fields.begin() + 1, fields.end());
        break;
      }
      if (names.empty()) throw TraceError("stream has no header line and no signals");
    }

    std::vector<SignalInfo> infos;
    for (const auto& n : names) {
      const bool is_bool =
          std::find(opts.bool_signals.begin(), opts.bool_signals.end(), n) != opts.bool_signals.end();
      infos.push_back({n, is_bool ? SignalKind::Boolean : SignalKind::Analog});
    }
    for (const auto& b : opts.bool_signals) {
      if (std::find(names.begin(), names.end(), b) == names.end()) {
        throw TraceError("--bool names unknown signal '" + b + "'");
      }
    }

    SessionOptions so;
    so.time_tol = opts.time_tol;
    Session session(props, infos, so);

    std::map<std::string, std::map<VerdictKind, IntervalSetBuilder>> summary;
    std::size_t fails = 0;
    auto emit = [&](const std::vector<Verdict>& vs) {
      for (const auto& v : vs) {
        out << verdict_json(v).dump() << '\n';
        auto& per = summary[v.assertion];
        auto it = per.try_emplace(v.kind, IntervalSetBuilder(opts.time_tol)).first;
        it->second.add(v.interval);
        if (v.kind == VerdictKind::Fail) ++fails;
      }
      out.flush();
    };

    std::vector<double> values(names.size());
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const auto fields = split_fields(line);
      if (fields.empty()) continue;
      if (fields.size() != names.size() + 1) {
        throw TraceError("line " + std::to_string(lineno) + ": expected " +
                         std::to_string(names.size() + 1) + " fields, got " +
                         std::to_string(fields.size()));
      }
      double t = 0.0;
      if (!parse_double(fields[0], t)) {
        throw TraceError("line " + std::to_string(lineno) + ": bad time '" + fields[0] + "'");
      }
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (!parse_double(fields[i + 1], values[i])) {
          throw TraceError("line " + std::to_string(lineno) + ": bad value '" + fields[i + 1] + "'");
        }
      }
      try {
        emit(session.feed(t, values));
      } catch (const TraceError& e) {
        throw TraceError("line " + std::to_string(lineno) + ": " + e.what());
      }
    }
    emit(session.finalize());

    json sum = json::object();
    for (const auto& p : props) {
      json entry = json::object();
      for (VerdictKind k : {VerdictKind::Match, VerdictKind::VacuousEnd, VerdictKind::Fail,
                            VerdictKind::Undetermined}) {
        IntervalSet s;
        auto pit = summary.find(p.name);
        if (pit != summary.end()) {
          auto kit = pit->second.find(k);
          if (kit != pit->second.end()) s = std::move(kit->second).build();
        }
        entry[to_string(k)] = set_json(s);
      }
      sum[p.name] = std::move(entry);
    }
    out << json{{"summary", std::move(sum)}, {"samples", session.samples()}}.dump() << '\n';
    return fails > 0 ? kExitFail : kExitOk;
  } catch (const std::exception& e) {
    report_error(err, e);
    return kExitError;
  }
}

int cmd_oracle(const OracleOptionsCli& opts, std::ostream& out, std::ostream& err) {
  try {
    const Trace tr = load_csv(opts.trace_path);
    const std::vector<Property> props =
        load_assertions(opts.assertion_path, opts.value_tol, opts.assert_name);
    double spacing = std::numeric_limits<double>::infinity();
    const auto& ts = tr.times();
    for (std::size_t i = 1; i < ts.size(); ++i) spacing = std::min(spacing, ts[i] - ts[i - 1]);

    bool failed = false;
    json list = json::array();
    for (const auto& p : props) {
      double dt = spacing;
      if (opts.dt) {
        dt = *opts.dt;
      } else {
        const double b = min_positive_bound(p);
        if (b > 0.0 && std::isfinite(b)) dt = std::min(dt, b / 20.0);
      }
      OracleOptions oo;
      oo.force = opts.force;
      const OracleResult r = oracle_classify(tr, p, dt, oo);
      failed = failed || std::find(r.classes.begin(), r.classes.end(), GridClass::Fail) != r.classes.end();
      list.push_back(oracle_json(p, r));
    }
    out << json{{"oracle", std::move(list)}}.dump(2) << '\n';
    return failed ? kExitFail : kExitOk;
  } catch (const std::exception& e) {
    report_error(err, e);
    return kExitError;
  }
}

int cmd_codegen(const CodegenOptionsCli& opts, std::ostream& out, std::ostream& err) {
  try {
    const std::vector<Property> props =
        load_assertions(opts.assertion_path, opts.value_tol, opts.assert_name);
    std::string text;
    int id = opts.first_id;
    for (const auto& p : props) {
      CodegenConfig cfg;
      cfg.assertion_id = id++;
      cfg.time_accuracy = opts.time_acc;
      cfg.value_accuracy = opts.value_acc;
      if (opts.module) cfg.module_name = p.name + "_monitor";
      if (!text.empty()) text += '\n';
      text += "// " + p.name + "\n";
      text += generate_monitors(p, cfg);
    }
    write_text(opts.out_path, text, out);
    return kExitOk;
  } catch (const std::exception& e) {
    report_error(err, e);
    return kExitError;
  }
}

int cmd_genwave(const GenwaveOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const Trace tr = generate_wave_file(opts.spec_path);
    std::ostringstream ss;
    write_csv(tr, ss);
    write_text(opts.out_path, ss.str(), out);
    return kExitOk;
  } catch (const std::exception& e) {
    report_error(err, e);
    return kExitError;
  }
}

}  // namespace amscheck::tools
