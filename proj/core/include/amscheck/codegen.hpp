#pragma once

#include <string>

#include "amscheck/ast.hpp"

namespace amscheck {

struct CodegenConfig {
  int assertion_id = 0;
  double time_accuracy = 1e-9;   // seconds
  double value_accuracy = 1e-6;  // volts
  /// Wrap the monitors in a module of this name. Empty emits bare blocks
  /// meant to be pasted into an existing testbench.
  std::string module_name;
};

/// Verilog-AMS monitors that report atom truth changes to the checker.
///
/// Every event atom becomes one `always` block calling $checkerCall. The
/// non-event atoms of each Boolean expression form one flag group: each
/// predicate gets a pair of cross() blocks driving a flag bit, the group flag
/// is assigned from the bits, and two `always@` blocks on the group flag call
/// $updateTruthInterval. Monitor numbers follow the order in which the
/// events and groups first appear in the property.
///
/// Throws CodegenError for non-positive accuracies or events under negation.
std::string generate_monitors(const Property& p, const CodegenConfig& cfg = {});

/// Shortest scientific spelling without exponent padding: 1e-9, 2.5e-6.
std::string format_accuracy(double v);

}  // namespace amscheck
