#include "amscheck/trace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "amscheck/ast.hpp"
#include "amscheck/errors.hpp"

namespace amscheck {

Trace::Trace(std::vector<SignalInfo> signals) : signals_(std::move(signals)) {
  columns_.resize(signals_.size());
  for (std::size_t i = 0; i < signals_.size(); ++i) {
    if (!index_.emplace(signals_[i].name, i).second) {
      throw TraceError("duplicate signal '" + signals_[i].name + "'");
    }
  }
}

Trace Trace::from_columns(std::vector<SignalInfo> signals, std::vector<double> times,
                          std::vector<std::vector<double>> columns) {
  Trace tr(std::move(signals));
  if (columns.size() != tr.signals_.size()) {
    throw TraceError("expected " + std::to_string(tr.signals_.size()) + " columns, got " +
                     std::to_string(columns.size()));
  }
  for (std::size_t s = 0; s < columns.size(); ++s) {
    if (columns[s].size() != times.size()) {
      throw TraceError("column '" + tr.signals_[s].name + "' has " +
                       std::to_string(columns[s].size()) + " values for " +
                       std::to_string(times.size()) + " instants");
    }
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i])) throw TraceError("non-finite time at row " + std::to_string(i));
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw TraceError("time not strictly increasing at row " + std::to_string(i) + " (" +
                       format_number(times[i - 1]) + " then " + format_number(times[i]) + ")");
    }
  }
  for (std::size_t s = 0; s < columns.size(); ++s) {
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double v = columns[s][i];
      if (!std::isfinite(v)) {
        throw TraceError("non-finite value for '" + tr.signals_[s].name + "' at row " +
                         std::to_string(i));
      }
      if (tr.signals_[s].kind == SignalKind::Boolean && v != 0.0 && v != 1.0) {
        throw TraceError("boolean signal '" + tr.signals_[s].name + "' has value " +
                         format_number(v) + " at row " + std::to_string(i));
      }
    }
  }
  tr.times_ = std::move(times);
  tr.columns_ = std::move(columns);
  tr.require_complete();
  return tr;
}

void Trace::append_sample(double t, std::span<const double> values) {
  if (values.size() != signals_.size()) {
    throw TraceError("sample has " + std::to_string(values.size()) + " values, expected " +
                     std::to_string(signals_.size()));
  }
  if (!std::isfinite(t) || (!times_.empty() && !(t > times_.back()))) {
    throw TraceError("sample time " + format_number(t) + " does not advance past " +
                     (times_.empty() ? std::string("start") : format_number(times_.back())));
  }
  for (std::size_t s = 0; s < values.size(); ++s) {
    if (!std::isfinite(values[s]) ||
        (signals_[s].kind == SignalKind::Boolean && values[s] != 0.0 && values[s] != 1.0)) {
      throw TraceError("bad value " + format_number(values[s]) + " for '" + signals_[s].name + "'");
    }
  }
  times_.push_back(t);
  for (std::size_t s = 0; s < values.size(); ++s) columns_[s].push_back(values[s]);
}

std::optional<std::size_t> Trace::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Trace::require_index(std::string_view name) const {
  if (auto idx = index_of(name)) return *idx;
  throw EvalError("unknown signal '" + std::string(name) + "'");
}

Interval Trace::domain() const {
  if (times_.empty()) return Interval::empty_interval();
  return Interval::closed(times_.front(), times_.back());
}

double Trace::value_at(std::string_view signal, double t) const {
  return value_at(require_index(signal), t);
}

double Trace::value_at(std::size_t signal, double t) const {
  if (times_.empty() || t < times_.front() || t > times_.back()) {
    throw TraceError("time " + format_number(t) + " outside trace domain " + to_string(domain()));
  }
  const auto& col = columns_[signal];
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - times_.begin()) - 1;
  if (times_[i] == t || i + 1 == times_.size()) return col[i];
  if (signals_[signal].kind == SignalKind::Boolean) return col[i];
  const double frac = (t - times_[i]) / (times_[i + 1] - times_[i]);
  return col[i] + frac * (col[i + 1] - col[i]);
}

void Trace::require_complete() const {
  if (times_.size() < 2) {
    throw TraceError("a trace needs at least two samples, got " + std::to_string(times_.size()));
  }
}

// ---------------------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_cell(std::string_view cell, std::size_t line_no) {
  double v = 0.0;
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (cell.empty() || res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
    throw TraceError("line " + std::to_string(line_no) + ": non-numeric cell '" +
                     std::string(cell) + "'");
  }
  return v;
}

}  // namespace

Trace read_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<SignalInfo> signals;
  bool have_header = false;
  std::vector<double> times;
  std::vector<std::vector<double>> columns;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    if (view.front() == '#') {
      const auto cells = split(view);
      if (cells[0] == "#kind") {
        if (!have_header) throw TraceError("line " + std::to_string(line_no) + ": #kind before header");
        if (cells.size() != signals.size() + 1) {
          throw TraceError("line " + std::to_string(line_no) + ": #kind row has wrong width");
        }
        for (std::size_t s = 0; s < signals.size(); ++s) {
          const auto k = cells[s + 1];
          if (k == "boolean" || k == "bool" || k == "digital") {
            signals[s].kind = SignalKind::Boolean;
          } else if (k == "analog" || k == "real" || k.empty()) {
            signals[s].kind = SignalKind::Analog;
          } else {
            throw TraceError("line " + std::to_string(line_no) + ": unknown kind '" +
                             std::string(k) + "'");
          }
        }
      }
      continue;
    }
    const auto cells = split(view);
    if (!have_header) {
      if (cells[0] != "time" && cells[0] != "t") {
        throw TraceError("line " + std::to_string(line_no) + ": header must start with 'time'");
      }
      for (std::size_t i = 1; i < cells.size(); ++i) {
        if (cells[i].empty()) throw TraceError("empty signal name in header");
        signals.push_back({std::string(cells[i]), SignalKind::Analog});
      }
      columns.resize(signals.size());
      have_header = true;
      continue;
    }
    if (cells.size() != signals.size() + 1) {
      throw TraceError("line " + std::to_string(line_no) + ": ragged row (" +
                       std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(signals.size() + 1) + ")");
    }
    times.push_back(parse_cell(cells[0], line_no));
    for (std::size_t s = 0; s < signals.size(); ++s) {
      columns[s].push_back(parse_cell(cells[s + 1], line_no));
    }
  }
  if (!have_header) throw TraceError("missing CSV header");
  return Trace::from_columns(std::move(signals), std::move(times), std::move(columns));
}

Trace load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw TraceError("cannot open trace file '" + path.string() + "'");
  return read_csv(in);
}

void write_csv(const Trace& trace, std::ostream& out) {
  out << "time";
  bool any_bool = false;
  for (const auto& s : trace.signals()) {
    out << ',' << s.name;
    any_bool = any_bool || s.kind == SignalKind::Boolean;
  }
  out << '\n';
  if (any_bool) {
    out << "#kind";
    for (const auto& s : trace.signals()) {
      out << ',' << (s.kind == SignalKind::Boolean ? "boolean" : "analog");
    }
    out << '\n';
  }
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out << format_number(trace.times()[i]);
    for (std::size_t s = 0; s < trace.signals().size(); ++s) {
      out << ',' << format_number(trace.column(s)[i]);
    }
    out << '\n';
  }
}

}  // namespace amscheck
