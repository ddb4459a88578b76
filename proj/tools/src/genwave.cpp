#include "amscheck_tools/genwave.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "amscheck/errors.hpp"

namespace amscheck::tools {

namespace {

using nlohmann::json;

struct Segment {
  enum class Type { Pwl, Ramp, ExpSettle, Square, Const } type = Type::Const;
  double from = -std::numeric_limits<double>::infinity();
  double until = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> points;  // pwl
  double t0 = 0.0, t1 = 0.0, v0 = 0.0, v1 = 0.0;   // ramp, exp_settle (v0 initial, v1 target)
  double tau = 1.0;
  double period = 1.0, duty = 0.5, low = 0.0, high = 1.0, delay = 0.0;  // square
  double value = 0.0;                                                   // const

  bool covers(double t) const { return t >= from && t < until; }

  double at(double t) const {
    switch (type) {
      case Type::Const:
        return value;
      case Type::Pwl: {
        if (t <= points.front().first) return points.front().second;
        if (t >= points.back().first) return points.back().second;
        auto it = std::upper_bound(points.begin(), points.end(), t,
                                   [](double v, const auto& p) { return v < p.first; });
        const auto& b = *it;
        const auto& a = *(it - 1);
        if (t == a.first) return a.second;
        return a.second + (t - a.first) / (b.first - a.first) * (b.second - a.second);
      }
      case Type::Ramp:
        if (t <= t0) return v0;
        if (t >= t1) return v1;
        return v0 + (t - t0) / (t1 - t0) * (v1 - v0);
      case Type::ExpSettle:
        if (t < t0) return v0;
        return v1 + (v0 - v1) * std::exp(-(t - t0) / tau);
      case Type::Square: {
        if (t < delay) return low;
        const double phase = std::fmod(t - delay, period);
        return phase < duty * period ? high : low;
      }
    }
    return 0.0;
  }

  void breakpoints(double start, double stop, std::vector<double>& out) const {
    auto add = [&](double t) {
      if (t >= start && t <= stop) out.push_back(t);
    };
    if (std::isfinite(from)) add(from);
    if (std::isfinite(until)) add(until);
    switch (type) {
      case Type::Pwl:
        for (const auto& p : points) add(p.first);
        break;
      case Type::Ramp:
        add(t0);
        add(t1);
        break;
      case Type::ExpSettle:
        add(t0);
        break;
      case Type::Square: {
        const double first = std::max(delay, start - period);
        const auto k0 = static_cast<long>(std::floor((first - delay) / period));
        for (long k = std::max(0L, k0);; ++k) {
          const double rise = delay + static_cast<double>(k) * period;
          if (rise > stop) break;
          add(rise);
          add(rise + duty * period);
        }
        break;
      }
      case Type::Const:
        break;
    }
  }
};

double num(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw TraceError(where + ": missing '" + key + "'");
  if (!j[key].is_number()) throw TraceError(where + ": '" + key + "' must be a number");
  const double v = j[key].get<double>();
  if (!std::isfinite(v)) throw TraceError(where + ": '" + key + "' must be finite");
  return v;
}

double num_or(const json& j, const char* key, double fallback, const std::string& where) {
  return j.contains(key) ? num(j, key, where) : fallback;
}

Segment parse_segment(const json& j, const std::string& where) {
  if (!j.is_object()) throw TraceError(where + ": segment must be an object");
  if (!j.contains("type") || !j["type"].is_string()) throw TraceError(where + ": missing 'type'");
  const std::string type = j["type"].get<std::string>();
  Segment s;
  s.from = num_or(j, "from_time", s.from, where);
  s.until = num_or(j, "until_time", s.until, where);
  if (type == "pwl") {
    s.type = Segment::Type::Pwl;
    if (!j.contains("points") || !j["points"].is_array() || j["points"].empty()) {
      throw TraceError(where + ": pwl needs a non-empty 'points' array");
    }
    for (const auto& p : j["points"]) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
        throw TraceError(where + ": pwl points are [time, value] pairs");
      }
      const double t = p[0].get<double>();
      if (!s.points.empty() && !(t > s.points.back().first)) {
        throw TraceError(where + ": pwl times must increase");
      }
      s.points.emplace_back(t, p[1].get<double>());
    }
  } else if (type == "ramp") {
    s.type = Segment::Type::Ramp;
    s.t0 = num(j, "t0", where);
    s.t1 = num(j, "t1", where);
    s.v0 = num(j, "from", where);
    s.v1 = num(j, "to", where);
    if (!(s.t1 > s.t0)) throw TraceError(where + ": ramp needs t1 > t0");
  } else if (type == "exp_settle") {
    s.type = Segment::Type::ExpSettle;
    s.t0 = num(j, "t0", where);
    s.v0 = num(j, "initial", where);
    s.v1 = num(j, "target", where);
    s.tau = num(j, "tau", where);
    if (!(s.tau > 0.0)) throw TraceError(where + ": exp_settle needs tau > 0");
  } else if (type == "square") {
    s.type = Segment::Type::Square;
    s.period = num(j, "period", where);
    s.duty = num_or(j, "duty", 0.5, where);
    s.low = num_or(j, "low", 0.0, where);
    s.high = num_or(j, "high", 1.0, where);
    s.delay = num_or(j, "delay", 0.0, where);
    if (!(s.period > 0.0) || !(s.duty > 0.0) || !(s.duty < 1.0)) {
      throw TraceError(where + ": square needs period > 0 and 0 < duty < 1");
    }
  } else if (type == "const") {
    s.type = Segment::Type::Const;
    s.value = num(j, "value", where);
  } else {
    throw TraceError(where + ": unknown segment type '" + type + "'");
  }
  return s;
}

}  // namespace

Trace generate_wave(const json& spec) {
  if (!spec.is_object()) throw TraceError("waveform spec must be a JSON object");
  const double start = num_or(spec, "start", 0.0, "spec");
  const double stop = num(spec, "stop", "spec");
  const double step = num(spec, "step", "spec");
  if (!(stop > start)) throw TraceError("spec: need stop > start");
  if (!(step > 0.0)) throw TraceError("spec: need step > 0");
  if ((stop - start) / step > 5e7) throw TraceError("spec: too many samples");
  if (!spec.contains("signals") || !spec["signals"].is_array() || spec["signals"].empty()) {
    throw TraceError("spec: 'signals' must be a non-empty array");
  }

  std::vector<SignalInfo> infos;
  std::vector<std::vector<Segment>> segs;
  std::vector<double> breaks;
  for (const auto& sj : spec["signals"]) {
    if (!sj.contains("name") || !sj["name"].is_string()) throw TraceError("spec: signal without name");
    SignalInfo info{sj["name"].get<std::string>(), SignalKind::Analog};
    const std::string where = "signal '" + info.name + "'";
    const std::string kind = sj.value("kind", std::string("analog"));
    if (kind == "boolean" || kind == "bool") {
      info.kind = SignalKind::Boolean;
    } else if (kind != "analog") {
      throw TraceError(where + ": unknown kind '" + kind + "'");
    }
    if (!sj.contains("segments") || !sj["segments"].is_array() || sj["segments"].empty()) {
      throw TraceError(where + ": needs a non-empty 'segments' array");
    }
    std::vector<Segment> list;
    for (const auto& seg : sj["segments"]) {
      list.push_back(parse_segment(seg, where));
      list.back().breakpoints(start, stop, breaks);
    }
    infos.push_back(std::move(info));
    segs.push_back(std::move(list));
  }

  // Uniform grid plus breakpoints. Grid instants that land within a tiny
  // fraction of a step from a breakpoint are replaced by the breakpoint.
  std::vector<double> grid;
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  for (long k = 0; k <= n; ++k) grid.push_back(start + static_cast<double>(k) * step);
  if (grid.back() < stop) grid.push_back(stop);
  std::sort(breaks.begin(), breaks.end());
  const double merge = step * 1e-6;
  std::vector<double> times;
  auto push = [&](double t, bool is_break) {
    if (!times.empty() && t - times.back() <= merge) {
      if (is_break) times.back() = t;
      return;
    }
    times.push_back(t);
  };
  std::size_t bi = 0;
  for (double g : grid) {
    while (bi < breaks.size() && breaks[bi] <= g + merge) push(breaks[bi++], true);
    push(g, false);
  }
  while (bi < breaks.size()) push(breaks[bi++], true);
  times.back() = std::min(times.back(), stop);

  std::vector<std::vector<double>> columns(infos.size());
  for (std::size_t s = 0; s < infos.size(); ++s) {
    columns[s].reserve(times.size());
    for (double t : times) {
      double v = 0.0;
      for (auto it = segs[s].rbegin(); it != segs[s].rend(); ++it) {
        if (it->covers(t)) {
          v = it->at(t);
          break;
        }
      }
      columns[s].push_back(v);
    }
  }
  return Trace::from_columns(std::move(infos), std::move(times), std::move(columns));
}

Trace generate_wave_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw TraceError("cannot open waveform spec '" + path.string() + "'");
  json spec;
  try {
    spec = json::parse(in);
  } catch (const json::parse_error& e) {
    throw TraceError("waveform spec '" + path.string() + "': " + e.what());
  }
  return generate_wave(spec);
}

}  // namespace amscheck::tools
