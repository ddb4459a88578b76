// Acceptance runner. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <regex>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "algebra_laws.hpp"
#include "amscheck/analysis.hpp"
#include "amscheck/clocked.hpp"
#include "amscheck/codegen.hpp"
#include "amscheck/match.hpp"
#include "amscheck/parser.hpp"
#include "amscheck_tools/commands.hpp"
#include "amscheck_tools/genwave.hpp"
#include "equivalence.hpp"

namespace fs = std::filesystem;
using namespace amscheck;
using nlohmann::json;

namespace {

constexpr double kTol = kDefaultTimeTol;
const std::string kFixtures = AMSCHECK_FIXTURE_DIR;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const Outcome& o) {
  std::printf("%s criterion %d: %s (%s)\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss << v;
  return ss.str();
}

Outcome golden_settling() {
  const auto t0 = Clock::now();
  const Trace tr = tools::generate_wave_file(kFixtures + "/settling_time.json");
  const Property p = parse_property(
      "@+{V(Vout),0.1*1.2} |-> ##[0.001:0.004] {V(Vout)>=0.95*1.2 && V(Vout)<=1.05*1.2}[*0.002];");
  const AtomTable tab = build_atom_table(tr, p);
  const IntervalSet e1 = bexpr_truth(tab, p.antecedent->bexpr);
  const IntervalSet p1 = bexpr_truth(tab, p.consequent->lhs->bexpr);
  const MatchReport r = assertion_match(p, tab);
  const double elapsed = seconds_since(t0);

  const IntervalSet want_e1(Interval::point(0.7e-3));
  const IntervalSet want_p1 = IntervalSet::from({Interval::closed(1.6e-3, 2.03e-3), Interval::closed(2.41e-3, 2.66e-3),
                                                 Interval::closed(3.04e-3, 3.55e-3), Interval::closed(3.8e-3, 7.9e-3)});
  Outcome o;
  o.pass = approx_equal(e1, want_e1, kTol) && approx_equal(p1, want_p1, kTol) &&
           approx_equal(r.nonvacuous, want_e1, kTol) && elapsed < 1.0;
  o.detail = "E1=" + to_string(e1) + " P1=" + to_string(p1) + " nonvacuous=" + to_string(r.nonvacuous) +
             " in " + fmt(elapsed) + " s";
  return o;
}

Outcome precision_escape() {
  const auto t0 = Clock::now();
  const Trace tr = tools::generate_wave_file(kFixtures + "/fig1.json");
  const Property p = parse_property("@+{V(Vin)>3} |-> ##[2e-6:4.25e-6] @+{V(Vout)>1.8}");
  const AtomTable tab = build_atom_table(tr, p);
  const IntervalSet ante = end_match(p.antecedent, tab);
  const MatchReport dense = assertion_match(p, tab);
  const ClockedResult clocked = clocked_check(tr, p, {0.4e-6, 0.0, 5, 11});
  const double elapsed = seconds_since(t0);

  const bool one_instant = ante.size() == 1 && ante[0].is_point();
  const double t_ante = one_instant ? ante[0].lo : NAN;
  Outcome o;
  o.pass = one_instant && dense.fail.contains(t_ante) && clocked.passed() && clocked.passes == 1 &&
           elapsed < 1.0;
  o.detail = "antecedent at " + fmt(t_ante) + ", dense fail " + to_string(dense.fail) + ", clocked ##[5:11] " +
             std::to_string(clocked.passes) + " pass/" + std::to_string(clocked.failures) + " fail in " +
             fmt(elapsed) + " s";
  return o;
}

struct Corpus {
  std::vector<testing::RandomCase> accepted;
  std::vector<testing::RandomCase> all;
  std::size_t rejected = 0;
};

// Draws cases until `want` of them pass the resolvability filter. Rejected
// cases stay in `all` for the online comparison, which has no grid.
Corpus build_corpus(std::size_t want) {
  std::mt19937_64 rng(20240601);
  Corpus c;
  while (c.accepted.size() < want) {
    testing::RandomCase rc = testing::random_case(rng);
    if (testing::grid_resolvable(rc)) {
      c.accepted.push_back(rc);
    } else {
      ++c.rejected;
    }
    c.all.push_back(std::move(rc));
  }
  return c;
}

double max_bound_ratio(const Property& p) {
  double worst = 0.0;
  std::function<void(const SeqPtr&)> walk = [&](const SeqPtr& s) {
    if (s->kind == SeqNode::Kind::Bool) return;
    worst = std::max({worst, s->lo, s->hi});
    walk(s->lhs);
    if (s->rhs) walk(s->rhs);
  };
  walk(p.antecedent);
  walk(p.consequent);
  if (p.delay) worst = std::max(worst, p.delay->hi);
  return worst;
}

int ast_depth(const SeqPtr& s) {
  if (s->kind == SeqNode::Kind::Bool) return 0;
  return 1 + std::max(ast_depth(s->lhs), s->rhs ? ast_depth(s->rhs) : 0);
}

Outcome oracle_equivalence(const Corpus& corpus) {
  const auto t0 = Clock::now();
  std::size_t far = 0;
  std::size_t near = 0;
  std::size_t points = 0;
  std::size_t shape_violations = 0;
  std::string first;
  for (const auto& c : corpus.accepted) {
    const double length = c.trace.domain().hi - c.trace.domain().lo;
    if (ast_depth(c.property.antecedent) > 3 || ast_depth(c.property.consequent) > 3 ||
        max_bound_ratio(c.property) > length / 3.0 + 1e-12) {
      ++shape_violations;
    }
    const testing::OracleComparison cmp = testing::compare_with_oracle(c);
    points += cmp.points;
    near += cmp.near_boundary;
    if (cmp.far > 0 && far++ == 0) first = cmp.first_far;
  }
  const double elapsed = seconds_since(t0);
  Outcome o;
  o.pass = corpus.accepted.size() >= 500 && far == 0 && shape_violations == 0 && elapsed <= 300.0;
  o.detail = std::to_string(corpus.accepted.size()) + " cases (" + std::to_string(corpus.rejected) +
             " drawn cases rejected as unresolvable at dt), " + std::to_string(points) + " grid points, " +
             std::to_string(near) + " boundary disagreements, " + std::to_string(far) +
             " non-boundary disagreements, " + std::to_string(shape_violations) +
             " shape violations in " + fmt(elapsed) + " s";
  if (!first.empty()) o.detail += "; first: " + first;
  return o;
}

IntervalSet set_from_json(const json& arr) {
  std::vector<Interval> items;
  for (const auto& iv : arr) {
    items.push_back({iv[0].get<double>(), iv[1].get<double>(), iv[2].get<bool>(), iv[3].get<bool>()});
  }
  return IntervalSet::from(std::move(items));
}

std::string stream_text(const Trace& tr) {
  std::ostringstream ss;
  ss.precision(17);
  for (std::size_t i = 0; i < tr.size(); ++i) {
    ss << tr.times()[i];
    for (std::size_t s = 0; s < tr.signals().size(); ++s) ss << ' ' << tr.column(s)[i];
    ss << '\n';
  }
  return ss.str();
}

// Runs `check` and `stream` on the same files and compares their sets.
Outcome online_equivalence(const Corpus& corpus) {
  const auto t0 = Clock::now();
  const fs::path dir = fs::temp_directory_path() / "amscheck_acceptance";
  fs::create_directories(dir);
  std::size_t mismatched = 0;
  std::size_t late = 0;
  std::size_t verdicts = 0;
  std::size_t errors = 0;
  std::string first;
  for (std::size_t i = 0; i < corpus.all.size(); ++i) {
    const auto& c = corpus.all[i];
    const fs::path trace_path = dir / "trace.csv";
    const fs::path prop_path = dir / "prop.amsal";
    {
      std::ofstream t(trace_path);
      write_csv(c.trace, t);
      std::ofstream a(prop_path);
      a << "property P{};\n  " << to_string(c.property) << ";\nendproperty\n";
    }
    tools::CheckOptions co;
    co.trace_path = trace_path.string();
    co.assertion_path = prop_path.string();
    co.json = true;
    std::ostringstream check_out;
    std::ostringstream err;
    const int check_rc = tools::cmd_check(co, check_out, err);

    tools::StreamOptions so;
    so.assertion_path = prop_path.string();
    for (const auto& s : c.trace.signals()) {
      so.signals.push_back(s.name);
      if (s.kind == SignalKind::Boolean) so.bool_signals.push_back(s.name);
    }
    std::istringstream in(stream_text(c.trace));
    std::ostringstream stream_out;
    const int stream_rc = tools::cmd_stream(so, in, stream_out, err);
    if (check_rc == tools::kExitError || stream_rc == tools::kExitError) {
      if (errors++ == 0 && first.empty()) first = "case " + std::to_string(i) + ": " + err.str();
      continue;
    }

    const json report = json::parse(check_out.str())["assertions"][0];
    const double h = report["horizon"].get<double>();
    const double step = testing::max_step(c.trace);
    std::vector<json> lines;
    std::string line;
    std::istringstream ls(stream_out.str());
    while (std::getline(ls, line)) lines.push_back(json::parse(line));
    const json summary = lines.back()["summary"]["P"];

    const bool same = check_rc == stream_rc &&
                      approx_equal(set_from_json(summary["match"]), set_from_json(report["nonvacuous"]), kTol) &&
                      approx_equal(set_from_json(summary["vacuous-end"]), set_from_json(report["vacuous"]), kTol) &&
                      approx_equal(set_from_json(summary["fail"]), set_from_json(report["fail"]), kTol);
    if (!same) {
      if (mismatched++ == 0 && first.empty()) first = "case " + std::to_string(i) + ": " + to_string(c.property);
    }
    for (std::size_t k = 0; k + 1 < lines.size(); ++k) {
      const json& v = lines[k];
      ++verdicts;
      const std::string kind = v["kind"];
      if (kind != "match" && kind != "fail") continue;
      const double start = v["interval"][0].get<double>();
      if (v["decided_at"].get<double>() > start + h + step + 2.0 * kTol + 1e-12) {
        if (late++ == 0 && first.empty()) first = "late verdict in case " + std::to_string(i) + ": " + v.dump();
      }
    }
  }
  fs::remove_all(dir);
  const double elapsed = seconds_since(t0);
  Outcome o;
  o.pass = mismatched == 0 && late == 0 && errors == 0 && !corpus.all.empty();
  o.detail = std::to_string(corpus.all.size()) + " cases through check and stream, " + std::to_string(verdicts) +
             " verdicts, " + std::to_string(mismatched) + " set mismatches, " + std::to_string(late) +
             " late verdicts, " + std::to_string(errors) + " errors in " + fmt(elapsed) + " s";
  if (!first.empty()) o.detail += "; first: " + first;
  return o;
}

Outcome algebra_laws() {
  std::mt19937_64 rng(77);
  const testing::LawReport rep = testing::check_algebra_laws(rng, 20000);
  Outcome o;
  o.pass = rep.cases >= 10000 && rep.failures == 0;
  o.detail = std::to_string(rep.cases) + " cases, " + std::to_string(rep.failures) + " failures";
  if (!rep.first_failure.empty()) o.detail += "; first: " + rep.first_failure;
  return o;
}

std::size_t count(const std::string& text, const std::string& pattern) {
  const std::regex re(pattern);
  return static_cast<std::size_t>(
      std::distance(std::sregex_iterator(text.begin(), text.end(), re), std::sregex_iterator()));
}

Outcome codegen_snapshot() {
  const Property p = parse_assertion_file(R"(
    property RisingSequence{};
      @+{enable} ##[0:0.0001] @+{V(Vout),0.1*1.2} |-> ##[0.001:0.004]
       {V(Vout)>=0.95*1.2 && V(Vout)<=1.05*1.2}[*0.002];
    endproperty)")
                         .front();
  std::ostringstream why;
  const std::pair<double, double> rows[] = {{1e-4, 1e-3}, {1e-6, 1e-4}, {1e-9, 1e-6}};
  for (const auto& [ta, va] : rows) {
    CodegenConfig cfg;
    cfg.time_accuracy = ta;
    cfg.value_accuracy = va;
    const std::string text = generate_monitors(p, cfg);
    const std::string acc = "," + format_accuracy(ta) + "," + format_accuracy(va) + "\\)\\)";
    const std::size_t callbacks = count(text, R"(\$checkerCall\()");
    const std::size_t cross_flags = count(text, R"(always @\(cross\([^\n]*\)\)\n\s+flag_2_[01] = )");
    const std::size_t assigns = count(text, R"(assign flag_2 = flag_2_0 && flag_2_1;)");
    const std::size_t flag_edges = count(text, R"(always@\((pos|neg)edge flag_2\))");
    const bool indices = text.find("$checkerCall(0,0,$abstime)") != std::string::npos &&
                         text.find("$checkerCall(0,1,$abstime)") != std::string::npos &&
                         text.find("$updateTruthInterval(0,2,+1,$abstime)") != std::string::npos &&
                         text.find("$updateTruthInterval(0,2,-1,$abstime)") != std::string::npos;
    const std::size_t crosses = count(text, R"(cross\()");
    const std::size_t accurate = count(text, acc);
    if (callbacks != 2 || cross_flags != 4 || assigns != 1 || flag_edges != 2 || !indices || crosses != 5 ||
        accurate != 5) {
      why << "row " << format_accuracy(ta) << "/" << format_accuracy(va) << ": callbacks=" << callbacks
          << " cross-flag=" << cross_flags << " assign=" << assigns << " flag-edge=" << flag_edges
          << " indices=" << indices << " literals=" << accurate << "/" << crosses << "; ";
    }
  }
  Outcome o;
  o.pass = why.str().empty();
  o.detail = o.pass ? "2 callback, 4 cross, 1 assign, 2 flag-edge blocks; indices (0,0) (0,1) (0,2,+1/-1); "
                      "literals for 1e-4/1e-3, 1e-6/1e-4, 1e-9/1e-6"
                    : why.str();
  return o;
}

// A 1e6-sample, three-signal trace written to CSV and checked end to end
// (CSV load, truth intervals, four assertions, report) by cmd_check.
Outcome throughput() {
  const fs::path dir = fs::temp_directory_path() / "amscheck_acceptance_big";
  fs::create_directories(dir);
  const fs::path trace_path = dir / "big.csv";
  const fs::path prop_path = dir / "big.amsal";
  const std::size_t n = 1000000;
  const double dt = 1e-8;
  {
    std::ofstream f(trace_path);
    f << "time,vin,vout,en\n#kind,analog,analog,boolean\n";
    char buf[128];
    for (std::size_t i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) * dt;
      const double vin = 1.2 + std::sin(2.0 * M_PI * 1e4 * t) + 0.05 * std::sin(2.0 * M_PI * 3.1e5 * t);
      const double vout = 1.2 * (1.0 - std::exp(-t / 2e-4)) + 0.02 * std::sin(2.0 * M_PI * 4.7e4 * t);
      const int en = (i / 25000) % 2;
      std::snprintf(buf, sizeof buf, "%.10g,%.9g,%.9g,%d\n", t, vin, vout, en);
      f << buf;
    }
    std::ofstream a(prop_path);
    a << "property Settle{}; @+{V(vout),0.1*1.2} |-> ##[0:0.001] {V(vout)>=0.95*1.2 && V(vout)<=1.05*1.2}[*0.0002]; endproperty\n"
         "property Follow{}; @+{V(vin)>1.5} |-> ##[0:2e-5] {V(vin)>1.6}; endproperty\n"
         "property Enabled{}; {en}[*1e-4] |-> {V(vout)>0.05 OR V(vin)<2.5}; endproperty\n"
         "property Window{}; @-{en} ##[0:5e-5] {V(vin)-V(vout)>0.1} |-> ##[1e-6:1e-4] {V(vin)*V(vout)<3}; endproperty\n";
  }
  tools::CheckOptions co;
  co.trace_path = trace_path.string();
  co.assertion_path = prop_path.string();
  std::ostringstream out;
  std::ostringstream err;
  const auto t0 = Clock::now();
  const int rc = tools::cmd_check(co, out, err);
  const double elapsed = seconds_since(t0);
  fs::remove_all(dir);
  Outcome o;
  o.pass = rc != tools::kExitError && elapsed < 10.0;
  o.detail = "CPU-overhead figures need a commercial simulator and proprietary netlists, so they are not "
             "reproduced; substitute: 1e6 samples x 3 signals x 4 assertions checked in " +
             fmt(elapsed) + " s (exit " + std::to_string(rc) + ")" + (rc == tools::kExitError ? ": " + err.str() : "");
  return o;
}

}  // namespace

int main() {
  report(1, "golden settling-time example", golden_settling());
  report(2, "dense fail vs clocked pass on the late response", precision_escape());
  const Corpus corpus = build_corpus(500);
  report(3, "oracle equivalence", oracle_equivalence(corpus));
  report(4, "stream vs check equivalence and verdict latency", online_equivalence(corpus));
  report(5, "interval algebra laws", algebra_laws());
  report(6, "monitor codegen structure", codegen_snapshot());
  report(7, "throughput substitute for simulator overhead", throughput());
  return failures == 0 ? 0 : 1;
}
