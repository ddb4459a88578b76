#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "amscheck/trace.hpp"

namespace amscheck::tools {

/// Builds a trace from a waveform description:
///
///   { "start": 0, "stop": 1e-2, "step": 1e-5,
///     "signals": [ { "name": "Vout", "kind": "analog",
///                    "segments": [ { "type": "pwl", "points": [[0,0], [7e-4,0.12]] } ] } ] }
///
/// Segment types: pwl (points), ramp (t0, t1, from, to), exp_settle (t0,
/// initial, target, tau), square (period, duty, low, high, delay), const
/// (value). A segment may be limited to [from_time, until_time); where
/// several segments cover an instant the last one listed wins. Samples are
/// the uniform grid plus every segment breakpoint inside [start, stop].
///
/// Throws amscheck::TraceError on malformed specs.
Trace generate_wave(const nlohmann::json& spec);
Trace generate_wave_file(const std::filesystem::path& path);

}  // namespace amscheck::tools
