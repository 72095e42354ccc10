#include <algorithm>
#include <charconv>
#include <limits>
#include <string>

#include "aph/scenario_io.hpp"

namespace aph {
namespace {

std::string to_chars_string(double value, std::chars_format fmt, int precision) {
  char buf[512];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, fmt, precision);
  if (ec != std::errc{}) throw Error("number formatting failed");
  std::string out(buf, ptr);
  // A value that rounds to zero prints without a sign.
  if (!out.empty() && out.front() == '-' &&
      out.find_first_not_of("-0.e+") == std::string::npos) {
    out.erase(0, 1);
  }
  return out;
}

std::string svg_number(double v) { return to_chars_string(v, std::chars_format::general, 7); }

void write_path(std::ostream& sink, std::span<const Vec2> pts, const char* style) {
  sink << "  <path " << style << " d=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    sink << (i == 0 ? "M" : " L") << svg_number(pts[i].x) << "," << svg_number(-pts[i].y);
  }
  sink << " Z\"/>\n";
}

}  // namespace

std::string format_fixed(double value, int decimals) {
  return to_chars_string(value, std::chars_format::fixed, decimals);
}

std::string format_scientific(double value, int decimals) {
  return to_chars_string(value, std::chars_format::scientific, decimals);
}

std::string_view monitor_csv_header() {
  return "time,L,A,kappa_bar,total_kappa,kosc,iso_ratio,diss_norm,kappa_l2,convex,dt";
}

void emit_monitor_row(const MonitorRecord& r, std::ostream& sink, int decimals) {
  const double values[] = {r.time, r.L,         r.A,         r.kappa_bar, r.total_kappa,
                           r.kosc, r.iso_ratio, r.diss_norm, r.kappa_l2};
  for (double v : values) sink << format_scientific(v, decimals) << ',';
  sink << (r.convex ? 1 : 0) << ',' << format_scientific(r.dt, decimals) << '\n';
}

void emit_snapshot(std::span<const Vec2> points, std::ostream& sink, int decimals) {
  for (const auto& p : points) {
    sink << format_fixed(p.x, decimals) << ',' << format_fixed(p.y, decimals) << '\n';
  }
}

void emit_svg(const CurveState& state, const Indicatrix& ind, const MonitorRecord& record,
              std::ostream& sink, bool overlay_isoperimetrix) {
  const auto pts = state.points();
  std::vector<Vec2> target;
  if (overlay_isoperimetrix && record.A > 0.0) {
    target = rescaled_isoperimetrix(ind, record.A, area_centroid(state), 512);
  }
  double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
  double lo_y = lo_x, hi_y = -lo_x;
  auto extend = [&](std::span<const Vec2> s) {
    for (const auto& p : s) {
      lo_x = std::min(lo_x, p.x);
      hi_x = std::max(hi_x, p.x);
      lo_y = std::min(lo_y, p.y);
      hi_y = std::max(hi_y, p.y);
    }
  };
  extend(pts);
  extend(target);
  const double size = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
  const double pad = 0.08 * size;
  const double text_band = 0.3 * size;
  const double x0 = lo_x - pad, y0 = -hi_y - pad - text_band;
  const double w = hi_x - lo_x + 2.0 * pad, h = hi_y - lo_y + 2.0 * pad + text_band;
  const double stroke = 0.004 * size;
  const double font = 0.05 * size;

  sink << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << svg_number(x0) << ' '
       << svg_number(y0) << ' ' << svg_number(w) << ' ' << svg_number(h) << "\">\n";
  if (!target.empty()) {
    write_path(sink, target,
               ("fill=\"none\" stroke=\"#999999\" stroke-dasharray=\"" + svg_number(4 * stroke) +
                "\" stroke-width=\"" + svg_number(stroke) + "\"")
                   .c_str());
  }
  write_path(sink, pts,
             ("fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"" + svg_number(stroke) + "\"")
                 .c_str());
  const double tx = x0 + pad;
  double ty = y0 + pad + font;
  sink << "  <g font-family=\"monospace\" font-size=\"" << svg_number(font) << "\">\n";
  const std::pair<const char*, double> lines[] = {
      {"t", record.time}, {"L", record.L}, {"A", record.A}, {"Kosc", record.kosc}};
  for (const auto& [label, value] : lines) {
    sink << "    <text x=\"" << svg_number(tx) << "\" y=\"" << svg_number(ty) << "\">" << label
         << " = " << format_scientific(value, 6) << "</text>\n";
    ty += 1.2 * font;
  }
  sink << "  </g>\n</svg>\n";
}

}  // namespace aph
