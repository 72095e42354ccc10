#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "aph/scenario_io.hpp"
#include "aph/spectral.hpp"

namespace aph {
namespace {

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(trim(s.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  T value{};
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end || s.empty()) return std::nullopt;
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) return std::nullopt;
  }
  return value;
}

std::string render_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, ptr};
}

// Holds the entries of one section and records every issue met while reading them.
class SectionReader {
 public:
  SectionReader(std::string name, std::vector<Entry> entries, int header_line,
                std::vector<ConfigIssue>& issues)
      : name_(std::move(name)),
        entries_(std::move(entries)),
        header_line_(header_line),
        issues_(issues) {}

  void issue(ConfigErrorKind kind, const std::string& key, int line, std::string reason) {
    issues_.push_back({kind, name_, key, line, std::move(reason)});
  }

  /// Marks key as understood; returns its single entry or nullptr.
  const Entry* single(const std::string& key) {
    const bool first_lookup = known_.insert(key).second;
    const Entry* found = nullptr;
    for (const auto& e : entries_) {
      if (e.key != key) continue;
      if (found && first_lookup) {
        issue(ConfigErrorKind::kDuplicateKey, key, e.line,
              "already set on line " + std::to_string(found->line));
      } else {
        found = &e;
      }
    }
    return found;
  }

  std::vector<const Entry*> repeated(const std::string& key) {
    known_.insert(key);
    std::vector<const Entry*> out;
    for (const auto& e : entries_) {
      if (e.key == key) out.push_back(&e);
    }
    return out;
  }

  const Entry* required(const std::string& key) {
    const Entry* e = single(key);
    if (!e) issue(ConfigErrorKind::kMissingRequired, key, 0, "required key is missing");
    return e;
  }

  template <typename T>
  std::optional<T> number(const Entry* e, std::string_view type_name) {
    if (!e) return std::nullopt;
    auto v = parse_number<T>(e->value);
    if (!v) {
      issue(ConfigErrorKind::kTypeMismatch, e->key, e->line,
            "expected " + std::string(type_name) + ", got '" + e->value + "'");
    }
    return v;
  }

  std::optional<double> real(const std::string& key) {
    return number<double>(single(key), "a real number");
  }
  std::optional<long long> integer(const std::string& key) {
    return number<long long>(single(key), "an integer");
  }

  /// "k, a, b" with integer k.
  std::optional<Harmonic> triple(const Entry* e) {
    const auto parts = split_commas(e->value);
    if (parts.size() == 3) {
      const auto k = parse_number<int>(parts[0]);
      const auto a = parse_number<double>(parts[1]);
      const auto b = parse_number<double>(parts[2]);
      if (k && a && b) return Harmonic{*k, *a, *b};
    }
    issue(ConfigErrorKind::kTypeMismatch, e->key, e->line,
          "expected 'k, a, b' with integer k, got '" + e->value + "'");
    return std::nullopt;
  }

  void range_error(const Entry* e, std::string reason) {
    issue(ConfigErrorKind::kValueOutOfRange, e ? e->key : "", e ? e->line : header_line_,
          std::move(reason));
  }

  /// Reports keys never asked for; `context` explains why they are not valid here.
  void reject_unknown(const std::string& context) {
    for (const auto& e : entries_) {
      if (known_.count(e.key) == 0) {
        issue(ConfigErrorKind::kUnknownKey, e.key, e.line, "not a valid key" + context);
      }
    }
  }


 private:
  std::string name_;
  std::vector<Entry> entries_;
  int header_line_;
  std::set<std::string> known_;
  std::vector<ConfigIssue>& issues_;
};

struct RawSection {
  std::vector<Entry> entries;
  int header_line = 0;
};

const std::vector<std::string>& section_names() {
  static const std::vector<std::string> names{"indicatrix", "curve", "flow", "output", "run"};
  return names;
}

std::map<std::string, RawSection> tokenize(std::string_view text,
                                           std::vector<ConfigIssue>& issues) {
  std::map<std::string, RawSection> sections;
  std::string current;
  bool skipping = false;  // inside an unknown section
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    const auto raw = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        issues.push_back({ConfigErrorKind::kSyntax, "", "", line_no, "unterminated section header"});
        skipping = true;
        continue;
      }
      current = std::string(trim(line.substr(1, line.size() - 2)));
      const auto& names = section_names();
      skipping = std::find(names.begin(), names.end(), current) == names.end();
      if (skipping) {
        issues.push_back({ConfigErrorKind::kUnknownKey, current, "", line_no, "unknown section"});
      } else if (sections.count(current) != 0) {
        issues.push_back({ConfigErrorKind::kDuplicateKey, current, "", line_no,
                          "section appears twice"});
      } else {
        sections[current].header_line = line_no;
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      issues.push_back({ConfigErrorKind::kSyntax, current, "", line_no, "expected 'key = value'"});
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (current.empty()) {
      issues.push_back({ConfigErrorKind::kSyntax, "", key, line_no, "key outside any section"});
      continue;
    }
    if (skipping) continue;
    if (value.empty()) {
      issues.push_back({ConfigErrorKind::kTypeMismatch, current, key, line_no, "empty value"});
      continue;
    }
    sections[current].entries.push_back({key, value, line_no});
  }
  return sections;
}

SectionReader reader_for(std::map<std::string, RawSection>& sections, const std::string& name,
                         std::vector<ConfigIssue>& issues) {
  auto it = sections.find(name);
  if (it == sections.end()) return SectionReader(name, {}, 0, issues);
  return SectionReader(name, std::move(it->second.entries), it->second.header_line, issues);
}

void read_indicatrix(SectionReader s, ScenarioConfig& cfg) {
  const Entry* preset = s.required("preset");
  if (const auto grid = s.integer("grid")) {
    if (*grid < 64) {
      s.range_error(s.single("grid"), "grid must be >= 64");
    } else {
      cfg.indicatrix_grid = static_cast<std::size_t>(*grid);
    }
  }
  if (!preset) {
    s.reject_unknown("");
    return;
  }
  if (preset->value == "euclidean") {
    cfg.indicatrix = IndicatrixSpec::euclidean();
  } else if (preset->value == "circle") {
    if (const auto r = s.number<double>(s.required("radius"), "a real number")) {
      if (*r <= 0.0) s.range_error(s.single("radius"), "radius must be positive");
      cfg.indicatrix = IndicatrixSpec::circle(*r);
    }
  } else if (preset->value == "fourier") {
    if (const auto c0 = s.number<double>(s.required("constant"), "a real number")) {
      cfg.indicatrix.constant_term = *c0;
    }
    cfg.indicatrix.harmonics.clear();
    for (const Entry* e : s.repeated("harmonic")) {
      const auto h = s.triple(e);
      if (!h) continue;
      if (h->k % 2 != 0) {
        s.issue(ConfigErrorKind::kOddHarmonic, e->key, e->line,
                "harmonic order " + std::to_string(h->k) +
                    " is odd; the indicatrix must be centrally symmetric");
      } else if (h->k < 2) {
        s.range_error(e, "harmonic order must be >= 2");
      }
      cfg.indicatrix.harmonics.push_back(*h);
    }
  } else {
    s.range_error(preset, "unknown preset '" + preset->value +
                              "' (expected euclidean, circle or fourier)");
  }
  s.reject_unknown(" for indicatrix preset '" + preset->value + "'");
}

void check_body(const ScenarioConfig& cfg, int line, std::vector<ConfigIssue>& issues) {
  try {
    (void)Indicatrix::build(cfg.indicatrix, cfg.indicatrix_grid);
  } catch (const IndicatrixError& e) {
    const auto kind = e.code() == IndicatrixError::Code::kOddHarmonic
                          ? ConfigErrorKind::kOddHarmonic
                          : ConfigErrorKind::kValueOutOfRange;
    issues.push_back({kind, "indicatrix", "preset", line, e.what()});
  }
}

void read_curve(SectionReader s, ScenarioConfig& cfg) {
  const Entry* preset = s.required("preset");
  if (!preset) {
    s.reject_unknown("");
    return;
  }
  const bool from_file = preset->value == "points_csv";
  if (!from_file) {
    if (const auto m = s.integer("points")) {
      if (*m < 16 || !spectral::is_power_of_two(static_cast<std::size_t>(*m))) {
        s.range_error(s.single("points"), "points must be a power of two >= 16");
      } else {
        cfg.points = static_cast<std::size_t>(*m);
      }
    }
  }
  if (preset->value == "circle") {
    CircleCurve c;
    if (const auto r = s.real("radius")) {
      if (*r <= 0.0) s.range_error(s.single("radius"), "radius must be positive");
      c.radius = *r;
    }
    cfg.curve = c;
  } else if (preset->value == "ellipse") {
    EllipseCurve c;
    if (const Entry* e = s.required("semi_axes")) {
      const auto parts = split_commas(e->value);
      const auto a = parts.size() == 2 ? parse_number<double>(parts[0]) : std::nullopt;
      const auto b = parts.size() == 2 ? parse_number<double>(parts[1]) : std::nullopt;
      if (!a || !b) {
        s.issue(ConfigErrorKind::kTypeMismatch, e->key, e->line,
                "expected 'a, b', got '" + e->value + "'");
      } else if (*a <= 0.0 || *b <= 0.0) {
        s.range_error(e, "semi-axes must be positive");
      } else {
        c = {*a, *b};
      }
    }
    cfg.curve = c;
  } else if (preset->value == "perturbed_isoperimetrix") {
    PerturbedIsoperimetrixCurve c;
    c.scale = s.real("scale");
    c.area = s.real("area");
    if (c.scale && c.area) {
      s.range_error(s.single("area"), "set exactly one of scale and area");
    } else if (!c.scale && !c.area && !s.single("scale") && !s.single("area")) {
      s.issue(ConfigErrorKind::kMissingRequired, "scale", 0, "one of scale or area is required");
    }
    if (c.scale && *c.scale <= 0.0) s.range_error(s.single("scale"), "scale must be positive");
    if (c.area && *c.area <= 0.0) s.range_error(s.single("area"), "area must be positive");
    for (const Entry* e : s.repeated("perturbation")) {
      const auto h = s.triple(e);
      if (!h) continue;
      if (h->k < 0) s.range_error(e, "perturbation order must be >= 0");
      c.perturbation.push_back(*h);
    }
    cfg.curve = c;
  } else if (from_file) {
    if (const Entry* e = s.required("path")) cfg.curve = PointsCsvCurve{e->value};
  } else {
    s.range_error(preset, "unknown preset '" + preset->value +
                              "' (expected circle, ellipse, perturbed_isoperimetrix or points_csv)");
  }
  s.reject_unknown(" for curve preset '" + preset->value + "'");
}

void read_flow(SectionReader s, ScenarioConfig& cfg) {
  FlowParams& f = cfg.flow;
  if (const auto p = s.number<long long>(s.required("p"), "an integer")) {
    if (*p < 1) {
      s.range_error(s.single("p"), "p must be >= 1 (the flow is defined for p >= 1)");
    } else if (*p > 8) {
      s.range_error(s.single("p"), "p must be <= 8");
    } else {
      f.p = static_cast<int>(*p);
    }
  }
  if (const auto t = s.number<double>(s.required("t_end"), "a real number")) {
    if (*t <= 0.0) s.range_error(s.single("t_end"), "t_end must be positive");
    f.t_end = *t;
  }
  if (const auto c = s.real("cfl")) {
    if (!(*c > 0.0 && *c <= 1.0)) s.range_error(s.single("cfl"), "cfl must lie in (0, 1]");
    f.cfl_constant = *c;
  }
  if (const auto d = s.real("dt_max")) {
    if (*d <= 0.0) s.range_error(s.single("dt_max"), "dt_max must be positive");
    f.dt_max = *d;
  }
  if (const auto r = s.integer("resample_every")) {
    if (*r < 0 || *r > 1'000'000'000) {
      s.range_error(s.single("resample_every"), "resample_every must be >= 0");
    } else {
      f.resample_every = static_cast<int>(*r);
    }
  }
  if (const auto m = s.integer("monitor_every")) {
    if (*m < 1 || *m > 1'000'000'000) {
      s.range_error(s.single("monitor_every"), "monitor_every must be >= 1");
    } else {
      f.monitor_every = static_cast<int>(*m);
    }
  }
  if (const auto k = s.real("stop_kosc")) {
    if (*k < 0.0) s.range_error(s.single("stop_kosc"), "stop_kosc must be non-negative");
    f.stop_kosc = *k;
  }
  if (const auto b = s.real("blowup_kappa_l2")) {
    if (*b <= 0.0) s.range_error(s.single("blowup_kappa_l2"), "blowup_kappa_l2 must be positive");
    f.blowup_kappa_l2 = *b;
  }
  s.reject_unknown(" in [flow]");
}

void read_output(SectionReader s, ScenarioConfig& cfg) {
  OutputConfig& o = cfg.output;
  if (const Entry* e = s.single("monitor_csv")) o.monitor_csv = e->value;
  if (const Entry* e = s.single("snapshots_dir")) o.snapshots_dir = e->value;
  auto positive = [&](const std::string& key) -> std::optional<int> {
    const auto v = s.integer(key);
    if (!v) return std::nullopt;
    if (*v < 1 || *v > 1'000'000'000) {
      s.range_error(s.single(key), key + " must be >= 1");
      return std::nullopt;
    }
    return static_cast<int>(*v);
  };
  o.snapshot_every = positive("snapshot_every");
  o.svg_every = positive("svg_every");
  if ((o.svg_every || o.snapshot_every) && !o.snapshots_dir) {
    s.issue(ConfigErrorKind::kMissingRequired, "snapshots_dir", 0,
            "snapshot_every and svg_every need snapshots_dir");
  }
  if (const auto d = s.integer("decimals")) {
    if (*d < 1 || *d > 17) {
      s.range_error(s.single("decimals"), "decimals must lie in [1, 17]");
    } else {
      o.decimals = static_cast<int>(*d);
    }
  }
  s.reject_unknown(" in [output]");
}

void read_run(SectionReader s, ScenarioConfig& cfg) {
  if (const auto seed = s.number<std::uint64_t>(s.single("seed"), "a non-negative integer")) {
    cfg.seed = *seed;
  }
  s.reject_unknown(" in [run]");
}

}  // namespace

std::string_view to_string(ConfigErrorKind kind) {
  switch (kind) {
    case ConfigErrorKind::kSyntax: return "Syntax";
    case ConfigErrorKind::kUnknownKey: return "UnknownKey";
    case ConfigErrorKind::kDuplicateKey: return "DuplicateKey";
    case ConfigErrorKind::kMissingRequired: return "MissingRequired";
    case ConfigErrorKind::kTypeMismatch: return "TypeMismatch";
    case ConfigErrorKind::kOddHarmonic: return "OddHarmonic";
    case ConfigErrorKind::kValueOutOfRange: return "ValueOutOfRange";
  }
  return "Unknown";
}

std::string ConfigIssue::describe() const {
  std::ostringstream out;
  if (line > 0) out << "line " << line << ": ";
  if (!section.empty()) out << "[" << section << "] ";
  if (!key.empty()) out << key << ": ";
  out << to_string(kind) << ": " << reason;
  return out.str();
}

namespace {
std::string join_issues(const std::vector<ConfigIssue>& issues) {
  std::string out = "invalid scenario configuration";
  for (const auto& i : issues) out += "\n  " + i.describe();
  return out;
}
}  // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : DomainError(join_issues(issues)), issues_(std::move(issues)) {}

ScenarioConfig parse_config(std::string_view text) {
  std::vector<ConfigIssue> issues;
  auto sections = tokenize(text, issues);
  ScenarioConfig cfg;
  const int indicatrix_line = sections.count("indicatrix") ? sections["indicatrix"].header_line : 0;
  read_indicatrix(reader_for(sections, "indicatrix", issues), cfg);
  read_curve(reader_for(sections, "curve", issues), cfg);
  read_flow(reader_for(sections, "flow", issues), cfg);
  read_output(reader_for(sections, "output", issues), cfg);
  read_run(reader_for(sections, "run", issues), cfg);
  const bool body_issues = std::any_of(issues.begin(), issues.end(), [](const ConfigIssue& i) {
    return i.section == "indicatrix";
  });
  if (!body_issues) check_body(cfg, indicatrix_line, issues);
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return cfg;
}

std::string render_config(const ScenarioConfig& cfg) {
  std::ostringstream out;
  const auto& ind = cfg.indicatrix;
  out << "[indicatrix]\n";
  if (ind.harmonics.empty() && ind.constant_term == 1.0) {
    out << "preset = euclidean\n";
  } else if (ind.harmonics.empty()) {
    out << "preset = circle\nradius = " << render_double(ind.constant_term) << "\n";
  } else {
    out << "preset = fourier\nconstant = " << render_double(ind.constant_term) << "\n";
    for (const auto& h : ind.harmonics) {
      out << "harmonic = " << h.k << ", " << render_double(h.cos_amp) << ", "
          << render_double(h.sin_amp) << "\n";
    }
  }
  if (cfg.indicatrix_grid != Indicatrix::kDefaultGrid) out << "grid = " << cfg.indicatrix_grid << "\n";

  out << "\n[curve]\n";
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, CircleCurve>) {
          out << "preset = circle\nradius = " << render_double(c.radius) << "\n";
        } else if constexpr (std::is_same_v<T, EllipseCurve>) {
          out << "preset = ellipse\nsemi_axes = " << render_double(c.a) << ", "
              << render_double(c.b) << "\n";
        } else if constexpr (std::is_same_v<T, PerturbedIsoperimetrixCurve>) {
          out << "preset = perturbed_isoperimetrix\n";
          if (c.scale) out << "scale = " << render_double(*c.scale) << "\n";
          if (c.area) out << "area = " << render_double(*c.area) << "\n";
          for (const auto& h : c.perturbation) {
            out << "perturbation = " << h.k << ", " << render_double(h.cos_amp) << ", "
                << render_double(h.sin_amp) << "\n";
          }
        } else {
          out << "preset = points_csv\npath = " << c.path.string() << "\n";
        }
        if constexpr (!std::is_same_v<T, PointsCsvCurve>) out << "points = " << cfg.points << "\n";
      },
      cfg.curve);

  const FlowParams& f = cfg.flow;
  out << "\n[flow]\np = " << f.p << "\nt_end = " << render_double(f.t_end) << "\n";
  if (f.cfl_constant) out << "cfl = " << render_double(*f.cfl_constant) << "\n";
  out << "dt_max = " << render_double(f.dt_max) << "\n";
  out << "resample_every = " << f.resample_every << "\n";
  out << "monitor_every = " << f.monitor_every << "\n";
  if (f.stop_kosc) out << "stop_kosc = " << render_double(*f.stop_kosc) << "\n";
  if (f.blowup_kappa_l2) out << "blowup_kappa_l2 = " << render_double(*f.blowup_kappa_l2) << "\n";

  const OutputConfig& o = cfg.output;
  out << "\n[output]\n";
  if (o.monitor_csv) out << "monitor_csv = " << o.monitor_csv->string() << "\n";
  if (o.snapshots_dir) out << "snapshots_dir = " << o.snapshots_dir->string() << "\n";
  if (o.snapshot_every) out << "snapshot_every = " << *o.snapshot_every << "\n";
  if (o.svg_every) out << "svg_every = " << *o.svg_every << "\n";
  out << "decimals = " << o.decimals << "\n";

  out << "\n[run]\nseed = " << cfg.seed << "\n";
  return out.str();
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace aph
