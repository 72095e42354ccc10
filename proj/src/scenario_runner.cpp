#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "aph/scenario_io.hpp"

namespace aph {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::vector<Vec2> sample_parametric(std::size_t m, double a, double b) {
  std::vector<Vec2> pts(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double u = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(m);
    pts[i] = {a * std::cos(u), b * std::sin(u)};
  }
  return pts;
}

std::filesystem::path resolve(const std::filesystem::path& p, const std::filesystem::path& base) {
  return p.is_relative() && !base.empty() ? base / p : p;
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw Error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

void close_output(std::ofstream& out, const std::filesystem::path& path) {
  out.close();
  if (!out) throw Error("write to " + path.string() + " failed");
}

std::string frame_name(const char* stem, std::size_t index, const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%06zu.%s", stem, index, ext);
  return buf;
}

}  // namespace

std::vector<Vec2> read_points_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read points file " + path.string());
  std::vector<Vec2> pts;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto comma = t.find(',');
    const auto x = comma == std::string_view::npos ? std::nullopt : parse_double(t.substr(0, comma));
    const auto y = comma == std::string_view::npos ? std::nullopt : parse_double(t.substr(comma + 1));
    if (!x || !y) {
      if (pts.empty() && line_no == 1) continue;  // header row
      throw DomainError(path.string() + ":" + std::to_string(line_no) + ": expected 'x,y'");
    }
    pts.push_back({*x, *y});
  }
  return pts;
}

CurveState build_initial_curve(const ScenarioConfig& config, const Indicatrix& ind,
                               std::ostream* log, const std::filesystem::path& base_dir) {
  const std::size_t m = config.points;
  std::vector<Vec2> pts = std::visit(
      [&](const auto& c) -> std::vector<Vec2> {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, CircleCurve>) {
          return sample_parametric(m, c.radius, c.radius);
        } else if constexpr (std::is_same_v<T, EllipseCurve>) {
          return sample_parametric(m, c.a, c.b);
        } else if constexpr (std::is_same_v<T, PerturbedIsoperimetrixCurve>) {
          const double scale = c.scale ? *c.scale : std::sqrt(*c.area / ind.area_isoperimetrix());
          return perturbed_isoperimetrix(ind, scale, c.perturbation, m);
        } else {
          return read_points_csv(resolve(c.path, base_dir));
        }
      },
      config.curve);
  CurveState state(std::move(pts));
  const double area = enclosed_area(state);
  if (!(area > 0.0)) {
    throw InvalidInitialCurve("initial curve encloses non-positive area " + std::to_string(area) +
                              " (points must run counter-clockwise)");
  }
  if (log) {
    const MonitorRecord r = compute_monitors(state, ind, config.flow.p);
    *log << "initial curve: M = " << state.size() << ", L = " << format_scientific(r.L, 9)
         << ", A = " << format_scientific(r.A, 9) << ", Kosc = " << format_scientific(r.kosc, 6)
         << ", I = " << format_scientific(r.iso_ratio, 9) << ", convex = " << (r.convex ? "yes" : "no")
         << "\n";
  }
  return state;
}

ScenarioResult run_scenario(const ScenarioConfig& config, std::ostream* log,
                            const std::filesystem::path& base_dir) {
  const Indicatrix ind = Indicatrix::build(config.indicatrix, config.indicatrix_grid);
  const CurveState initial = build_initial_curve(config, ind, log, base_dir);
  const OutputConfig& out = config.output;
  ScenarioResult result;

  std::ofstream monitor;
  if (out.monitor_csv) {
    monitor = open_output(*out.monitor_csv);
    monitor << monitor_csv_header() << '\n';
    result.written.push_back(*out.monitor_csv);
  }
  if (out.snapshots_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*out.snapshots_dir, ec);
    if (ec) throw Error("cannot create directory " + out.snapshots_dir->string() + ": " + ec.message());
  }

  std::size_t index = 0;
  std::size_t last_snapshot = SIZE_MAX, last_svg = SIZE_MAX;
  auto write_snapshot = [&](const TrajectorySample& s, std::size_t i) {
    const auto path = *out.snapshots_dir / frame_name("snapshot", i, "csv");
    auto f = open_output(path);
    emit_snapshot(s.state.points(), f, out.decimals);
    close_output(f, path);
    result.written.push_back(path);
    last_snapshot = i;
  };
  auto write_svg = [&](const TrajectorySample& s, std::size_t i) {
    const auto path = *out.snapshots_dir / frame_name("frame", i, "svg");
    auto f = open_output(path);
    emit_svg(s.state, ind, s.record, f);
    close_output(f, path);
    result.written.push_back(path);
    last_svg = i;
  };

  const SampleObserver observer = [&](const TrajectorySample& s) {
    if (monitor.is_open()) {
      emit_monitor_row(s.record, monitor, out.decimals);
      if (!monitor) throw Error("write to " + out.monitor_csv->string() + " failed");
    }
    if (out.snapshots_dir) {
      if (index == 0 || (out.snapshot_every && index % *out.snapshot_every == 0)) {
        write_snapshot(s, index);
      }
      if (out.svg_every && index % *out.svg_every == 0) write_svg(s, index);
    }
    ++index;
  };

  result.trajectory = run(initial, ind, config.flow, observer);

  const std::size_t final_index = index - 1;
  if (out.snapshots_dir) {
    const auto& last = result.trajectory.final();
    if (last_snapshot != final_index) write_snapshot(last, final_index);
    if (out.svg_every && last_svg != final_index) write_svg(last, final_index);
  }
  if (monitor.is_open()) close_output(monitor, *out.monitor_csv);
  if (log) {
    const auto& t = result.trajectory;
    *log << "finished: " << to_string(t.termination) << " at t = "
         << format_scientific(t.final().time, 9) << " after " << t.steps << " steps ("
         << t.resamples << " resamples), Kosc = " << format_scientific(t.final().record.kosc, 6)
         << "\n";
    if (!t.note.empty()) *log << "note: " << t.note << "\n";
  }
  return result;
}

}  // namespace aph
