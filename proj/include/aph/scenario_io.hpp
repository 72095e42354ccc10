#pragma once

// Scenario files, initial-curve presets and every artifact a run writes.
//
// A scenario is a flat INI-style text file:
//
//   [indicatrix]  preset = euclidean | circle | fourier
//                 radius = R                       (circle)
//                 constant = c0                    (fourier)
//                 harmonic = k, a_k, b_k           (fourier, repeatable, k even)
//                 grid = N                         (optional)
//   [curve]       preset = circle | ellipse | perturbed_isoperimetrix | points_csv
//                 points = M                       (not for points_csv)
//                 radius = R                       (circle)
//                 semi_axes = a, b                 (ellipse)
//                 scale = s  or  area = A          (perturbed_isoperimetrix, exactly one)
//                 perturbation = k, a_k, b_k       (perturbed_isoperimetrix, repeatable)
//                 path = file.csv                  (points_csv)
//   [flow]        p, t_end (required); cfl, dt_max, resample_every,
//                 monitor_every, stop_kosc, blowup_kappa_l2 (optional)
//   [output]      monitor_csv, snapshots_dir, snapshot_every, svg_every, decimals
//   [run]         seed
//
// Lines starting with '#' or ';' are comments.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "aph/curve_geometry.hpp"
#include "aph/error.hpp"
#include "aph/flow_engine.hpp"
#include "aph/indicatrix.hpp"
#include "aph/monitors.hpp"

namespace aph {

// ---------------------------------------------------------------- config

struct CircleCurve {
  double radius = 1.0;
  friend bool operator==(const CircleCurve&, const CircleCurve&) = default;
};

struct EllipseCurve {
  double a = 1.0;
  double b = 1.0;
  friend bool operator==(const EllipseCurve&, const EllipseCurve&) = default;
};

/// Exactly one of scale and area is set; area picks the scale that makes the
/// unperturbed isoperimetrix enclose that area.
struct PerturbedIsoperimetrixCurve {
  std::optional<double> scale;
  std::optional<double> area;
  std::vector<Harmonic> perturbation;
  friend bool operator==(const PerturbedIsoperimetrixCurve&,
                         const PerturbedIsoperimetrixCurve&) = default;
};

struct PointsCsvCurve {
  std::filesystem::path path;
  friend bool operator==(const PointsCsvCurve&, const PointsCsvCurve&) = default;
};

using CurveSource =
    std::variant<CircleCurve, EllipseCurve, PerturbedIsoperimetrixCurve, PointsCsvCurve>;

struct OutputConfig {
  std::optional<std::filesystem::path> monitor_csv;
  std::optional<std::filesystem::path> snapshots_dir;
  /// Snapshot CSV every n-th monitor sample; the first and last are always written.
  std::optional<int> snapshot_every;
  /// SVG every n-th monitor sample plus the last one; requires snapshots_dir.
  std::optional<int> svg_every;
  int decimals = 16;
  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct ScenarioConfig {
  IndicatrixSpec indicatrix;
  std::size_t indicatrix_grid = Indicatrix::kDefaultGrid;
  CurveSource curve = CircleCurve{};
  /// Ignored for points_csv, whose row count fixes M.
  std::size_t points = 256;
  FlowParams flow;
  OutputConfig output;
  std::uint64_t seed = 0;
  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

enum class ConfigErrorKind {
  kSyntax,
  kUnknownKey,
  kDuplicateKey,
  kMissingRequired,
  kTypeMismatch,
  kOddHarmonic,
  kValueOutOfRange,
};

std::string_view to_string(ConfigErrorKind kind);

struct ConfigIssue {
  ConfigErrorKind kind;
  std::string section;
  std::string key;
  int line = 0;  // 1-based; 0 when the problem is a missing entry
  std::string reason;

  /// "line 7: [flow] p: ValueOutOfRange: p must be >= 1"
  std::string describe() const;
};

class ConfigError : public DomainError {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

/// Parses and validates a scenario; throws ConfigError listing every issue found.
ScenarioConfig parse_config(std::string_view text);

/// Canonical text form; parse_config(render_config(c)) == c.
std::string render_config(const ScenarioConfig& config);

/// Reads the file and parses it. Throws Error if the file cannot be read.
ScenarioConfig load_config(const std::filesystem::path& path);

// ---------------------------------------------------------------- curves

/// Reads "x,y" rows. A non-numeric first row is taken as a header; blank lines
/// and '#' comments are skipped. Throws Error with path context.
std::vector<Vec2> read_points_csv(const std::filesystem::path& path);

/// Samples the configured initial curve; relative CSV paths are resolved
/// against base_dir. Writes the initial Kosc and isoperimetric ratio to log
/// when given. Throws InvalidInitialCurve on non-positive enclosed area.
CurveState build_initial_curve(const ScenarioConfig& config, const Indicatrix& ind,
                               std::ostream* log = nullptr,
                               const std::filesystem::path& base_dir = {});

// ---------------------------------------------------------------- output

/// Exact monitor CSV header line (without newline).
std::string_view monitor_csv_header();

/// One data row in scientific notation with `decimals` digits after the point.
void emit_monitor_row(const MonitorRecord& record, std::ostream& sink, int decimals);

/// "x,y" rows in fixed notation; negative zero prints as 0.
void emit_snapshot(std::span<const Vec2> points, std::ostream& sink, int decimals);

/// Standalone SVG: one path for the curve, one for the area-matched
/// isoperimetrix when overlay is set, and a text block with L, A and Kosc.
void emit_svg(const CurveState& state, const Indicatrix& ind, const MonitorRecord& record,
              std::ostream& sink, bool overlay_isoperimetrix = true);

/// Fixed-notation number as emitted in snapshots.
std::string format_fixed(double value, int decimals);
/// Scientific-notation number as emitted in monitor rows.
std::string format_scientific(double value, int decimals);

// ---------------------------------------------------------------- runner

struct ScenarioResult {
  Trajectory trajectory;
  std::vector<std::filesystem::path> written;
};

/// Builds the body and the initial curve, integrates, and writes the
/// configured outputs. Output directories are created as needed; I/O failures
/// throw Error naming the path.
ScenarioResult run_scenario(const ScenarioConfig& config, std::ostream* log = nullptr,
                            const std::filesystem::path& base_dir = {});

}  // namespace aph
