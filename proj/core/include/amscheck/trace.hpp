#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "amscheck/interval.hpp"

namespace amscheck {

enum class SignalKind { Analog, Boolean };

struct SignalInfo {
  std::string name;
  SignalKind kind = SignalKind::Analog;
};

/// Sampled multi-signal waveform. Between samples analog signals are linearly
/// interpolated and Boolean signals hold their previous sample, which defines
/// the dense-time trace every checker in this library works on.
///
/// Invariants: sample instants strictly increase, every column has one value
/// per instant, Boolean columns only hold 0 or 1.
class Trace {
 public:
  Trace() = default;
  explicit Trace(std::vector<SignalInfo> signals);

  /// Builds and validates a complete trace (at least two samples).
  static Trace from_columns(std::vector<SignalInfo> signals, std::vector<double> times,
                            std::vector<std::vector<double>> columns);

  /// Appends one sample; `values` follows signal order. Throws TraceError if
  /// t does not exceed the last instant.
  void append_sample(double t, std::span<const double> values);

  std::size_t size() const { return times_.size(); }
  const std::vector<double>& times() const { return times_; }
  const std::vector<SignalInfo>& signals() const { return signals_; }
  std::span<const double> column(std::size_t signal) const { return columns_[signal]; }
  SignalKind kind(std::size_t signal) const { return signals_[signal].kind; }

  std::optional<std::size_t> index_of(std::string_view name) const;
  /// Throws EvalError for unknown names.
  std::size_t require_index(std::string_view name) const;

  /// [first sample : last sample].
  Interval domain() const;

  double value_at(std::string_view signal, double t) const;
  double value_at(std::size_t signal, double t) const;

  /// Throws TraceError unless the trace has at least two samples.
  void require_complete() const;

 private:
  std::vector<SignalInfo> signals_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> times_;
  std::vector<std::vector<double>> columns_;
};

/// CSV with a `time,<sig>,...` header and an optional `#kind,analog,boolean,...`
/// row. Other lines starting with `#` are ignored.
Trace read_csv(std::istream& in);
Trace load_csv(const std::filesystem::path& path);
void write_csv(const Trace& trace, std::ostream& out);

}  // namespace amscheck
