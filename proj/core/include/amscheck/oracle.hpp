#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "amscheck/ast.hpp"
#include "amscheck/trace.hpp"

namespace amscheck {

enum class GridClass : std::uint8_t { Match, Vacuous, Fail, Undetermined };

std::string to_string(GridClass c);

/// Classification of the grid instants L, L+dt, L+2dt, ... <= R.
struct OracleResult {
  std::vector<double> times;
  std::vector<GridClass> classes;
  double dt = 0.0;
};

struct OracleOptions {
  /// Report fails within one horizon of the trace end as undetermined,
  /// mirroring the interval engine.
  bool trace_end_open = true;
  /// Skip the dt precondition checks (debugging only).
  bool force = false;
};

/// Brute-force reference semantics. Predicates are evaluated directly at each
/// grid instant, events compare neighbouring instants, and every temporal
/// quantifier becomes an explicit loop over grid indices. It shares no code
/// with the interval engine beyond the AST and trace interpolation.
///
/// Throws OracleError unless dt <= (smallest positive bound)/10 and dt is no
/// larger than the smallest sample spacing.
OracleResult oracle_classify(const Trace& tr, const Property& p, double dt,
                             const OracleOptions& opts = {});

}  // namespace amscheck
