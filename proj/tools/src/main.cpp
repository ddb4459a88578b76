#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "amscheck_tools/commands.hpp"

using namespace amscheck::tools;

int main(int argc, char** argv) {
  CLI::App app{"Dense-time assertion checker for analog and mixed-signal traces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "amscheck 0.1.0");

  CheckOptions check;
  auto* c = app.add_subcommand("check", "Check assertions against a CSV trace");
  c->add_option("trace", check.trace_path, "Trace CSV")->required();
  c->add_option("assertions", check.assertion_path, "Assertion file")->required();
  c->add_option("--time-tol", check.time_tol, "Time tolerance in seconds")->check(CLI::PositiveNumber);
  c->add_option("--value-tol", check.value_tol, "Band half-width for analog ==")->check(CLI::PositiveNumber);
  c->add_option("--report", check.report_path, "Write the JSON report to this file");
  c->add_option("--assert-name", check.assert_name, "Only assertions whose name matches this glob");
  c->add_flag("--json", check.json, "Print the JSON report instead of the summary table");

  StreamOptions stream;
  auto* s = app.add_subcommand("stream", "Check a sample stream read from stdin");
  s->add_option("assertions", stream.assertion_path, "Assertion file")->required();
  s->add_option("--signals", stream.signals, "Signal names in column order")->delimiter(',');
  s->add_option("--bool", stream.bool_signals, "Signals holding 0/1 values")->delimiter(',');
  s->add_option("--time-tol", stream.time_tol, "Time tolerance in seconds")->check(CLI::PositiveNumber);
  s->add_option("--value-tol", stream.value_tol, "Band half-width for analog ==")->check(CLI::PositiveNumber);
  s->add_option("--assert-name", stream.assert_name, "Only assertions whose name matches this glob");

  OracleOptionsCli oracle;
  auto* o = app.add_subcommand("oracle", "Classify a uniform time grid by brute force");
  o->add_option("trace", oracle.trace_path, "Trace CSV")->required();
  o->add_option("assertions", oracle.assertion_path, "Assertion file")->required();
  o->add_option("--dt", oracle.dt, "Grid step in seconds")->check(CLI::PositiveNumber);
  o->add_option("--value-tol", oracle.value_tol, "Band half-width for analog ==")->check(CLI::PositiveNumber);
  o->add_option("--assert-name", oracle.assert_name, "Only assertions whose name matches this glob");
  o->add_flag("--force", oracle.force, "Skip the grid step preconditions");

  CodegenOptionsCli codegen;
  auto* g = app.add_subcommand("codegen", "Emit Verilog-AMS monitor blocks");
  g->add_option("assertions", codegen.assertion_path, "Assertion file")->required();
  g->add_option("--id", codegen.first_id, "Id of the first assertion");
  g->add_option("--time-acc", codegen.time_acc, "cross() time accuracy")->check(CLI::PositiveNumber);
  g->add_option("--value-acc", codegen.value_acc, "cross() value accuracy")->check(CLI::PositiveNumber);
  g->add_option("--out", codegen.out_path, "Output file (default stdout)");
  g->add_option("--assert-name", codegen.assert_name, "Only assertions whose name matches this glob");
  g->add_flag("--module", codegen.module, "Wrap each assertion in a <name>_monitor module");

  GenwaveOptions wave;
  auto* w = app.add_subcommand("genwave", "Render a JSON waveform description to CSV");
  w->add_option("spec", wave.spec_path, "Waveform JSON")->required();
  w->add_option("--out", wave.out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitError;
  }

  if (c->parsed()) return cmd_check(check, std::cout, std::cerr);
  if (s->parsed()) return cmd_stream(stream, std::cin, std::cout, std::cerr);
  if (o->parsed()) return cmd_oracle(oracle, std::cout, std::cerr);
  if (g->parsed()) return cmd_codegen(codegen, std::cout, std::cerr);
  return cmd_genwave(wave, std::cout, std::cerr);
}
