#pragma once

#include "fracdyn/errors.hpp"
#include "fracdyn/propagate.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fracdyn::sweep {

enum class Observable { Total, Excited, RhoDiag };

/// Axes of a sweep. The time axis is implicit.
enum class Axis { Variant, Qubits, Beta, Lambda, Photons, Concurrence };

enum class PlotQuantity { Total, Excited };

/// How emit_svg groups rows: one curve per value of curve_by, one panel per
/// distinct combination of the remaining axes.
struct Grouping {
  Axis curve_by = Axis::Beta;
  PlotQuantity quantity = PlotQuantity::Total;
  std::string title;
};

struct SweepConfig {
  std::vector<propagate::Variant> variants{propagate::Variant::NewTFSE};
  std::vector<int> qubits{1};
  std::vector<double> beta_values{0.5};
  std::vector<double> lambda_values{0.5};
  std::vector<std::uint64_t> n_values{50};
  std::vector<double> c0_values{0.5};
  double t_max = 20.0;
  std::size_t t_steps = 400;
  std::vector<Observable> observables{Observable::Total, Observable::Excited};
  std::optional<std::string> preset;
  std::optional<std::filesystem::path> csv_path;
  std::optional<std::filesystem::path> svg_path;

  /// Throws ValidationError for out-of-range values.
  void validate() const;
  /// Sorts every axis ascending (variants in declaration order) and drops duplicates.
  void normalize();
  bool wants(Observable o) const;
  std::size_t row_count() const;
  /// t_k = t_max * k / (t_steps - 1), k = 0 .. t_steps - 1.
  std::vector<double> time_grid() const;
};

struct Setting {
  std::string value;
  std::size_t line = 0;  // 0 for settings that did not come from a file
};
using Settings = std::map<std::string, Setting>;

/// Plain-text key=value document, '#' starts a comment. Recognised keys:
///   preset, variant, qubits (alias l), beta, lambda, n, c0, tmax, steps,
///   observables, csv, svg
/// List-valued keys take comma-separated values. Unknown or repeated keys
/// are ParseErrors.
Settings parse_settings(std::string_view text);

/// Applies the preset (if any) first, then every other key.
SweepConfig config_from_settings(const Settings& settings);

SweepConfig parse_config(std::string_view text);
SweepConfig load_config(const std::filesystem::path& path);

struct FigurePreset {
  std::string id;
  /// Which sweep values are artifact choices rather than caption values.
  std::string note;
  SweepConfig config;
  Grouping grouping;
};

std::span<const FigurePreset> figure_presets();
/// Throws ValidationError for an unknown id.
const FigurePreset& find_preset(std::string_view id);

struct ResultRow {
  propagate::Variant variant;
  int qubits;
  double beta;
  double lambda;
  std::uint64_t n;
  double c0;
  double t;
  double p_total;
  double p_excited;
  std::array<double, 4> rho_diag{};
};

struct ResultTable {
  std::vector<ResultRow> rows;
  bool with_rho_diag = false;
};

/// Numerical failure at one grid point, with the key tuple in the message.
class SweepPointError : public NumericalError {
 public:
  SweepPointError(std::string key, const std::string& what)
      : NumericalError(what + " at " + key), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// One row per (variant, l, beta, lambda, n, c0, t) in lexicographic key
/// order. Independent of any evaluation schedule.
ResultTable run_sweep(const SweepConfig& config);

Grouping default_grouping(const SweepConfig& config);

std::string_view observable_key(Observable o);
std::optional<Observable> parse_observable(std::string_view key);

}  // namespace fracdyn::sweep
