#include "fracdyn/sweep.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace fracdyn::sweep {
namespace {

using propagate::Variant;

constexpr std::array<std::string_view, 12> kKnownKeys{"preset", "variant", "qubits", "l",     "beta", "lambda",
                                                      "n",      "c0",      "tmax",   "steps", "observables",
                                                      "csv"};

bool is_known_key(std::string_view key) {
  return key == "svg" || std::find(kKnownKeys.begin(), kKnownKeys.end(), key) != kKnownKeys.end();
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(const std::string& key, const Setting& s) {
  std::vector<std::string_view> out;
  std::string_view rest = s.value;
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    if (item.empty()) throw ParseError(s.line, key, "empty list element");
    out.push_back(item);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

double parse_double(const std::string& key, const Setting& s, std::string_view token) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value)) {
    throw ParseError(s.line, key, "'" + std::string(token) + "' is not a number");
  }
  return value;
}

long long parse_integer(const std::string& key, const Setting& s, std::string_view token) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(s.line, key, "'" + std::string(token) + "' is not an integer");
  }
  return value;
}

std::vector<double> parse_doubles(const std::string& key, const Setting& s) {
  std::vector<double> out;
  for (const auto token : split_list(key, s)) out.push_back(parse_double(key, s, token));
  return out;
}

template <typename T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void check_range(const std::vector<double>& values, double lo, double hi, bool open_lo, const char* name) {
  if (values.empty()) throw ValidationError(std::string(name) + ": at least one value is required");
  for (const double v : values) {
    const bool ok = (open_lo ? v > lo : v >= lo) && v <= hi;
    if (!ok) {
      throw ValidationError(fmt::format("{} = {:g} is outside {}{:g}, {:g}]", name, v, open_lo ? "(" : "[", lo, hi));
    }
  }
}

void apply(SweepConfig& cfg, const std::string& key, const Setting& s) {
  if (key == "variant") {
    cfg.variants.clear();
    for (const auto token : split_list(key, s)) {
      const auto v = propagate::parse_variant(token);
      if (!v) throw ParseError(s.line, key, "unknown variant '" + std::string(token) + "'");
      cfg.variants.push_back(*v);
    }
  } else if (key == "qubits" || key == "l") {
    cfg.qubits.clear();
    for (const auto token : split_list(key, s)) {
      cfg.qubits.push_back(static_cast<int>(parse_integer(key, s, token)));
    }
  } else if (key == "beta") {
    cfg.beta_values = parse_doubles(key, s);
  } else if (key == "lambda") {
    cfg.lambda_values = parse_doubles(key, s);
  } else if (key == "c0") {
    cfg.c0_values = parse_doubles(key, s);
  } else if (key == "n") {
    cfg.n_values.clear();
    for (const auto token : split_list(key, s)) {
      const long long n = parse_integer(key, s, token);
      if (n < 0) throw ValidationError("n = " + std::to_string(n) + " must be non-negative");
      cfg.n_values.push_back(static_cast<std::uint64_t>(n));
    }
  } else if (key == "tmax") {
    cfg.t_max = parse_double(key, s, trim(s.value));
  } else if (key == "steps") {
    const long long steps = parse_integer(key, s, trim(s.value));
    if (steps < 2) throw ValidationError("steps = " + std::to_string(steps) + " must be at least 2");
    cfg.t_steps = static_cast<std::size_t>(steps);
  } else if (key == "observables") {
    cfg.observables.clear();
    for (const auto token : split_list(key, s)) {
      const auto o = parse_observable(token);
      if (!o) throw ParseError(s.line, key, "unknown observable '" + std::string(token) + "'");
      cfg.observables.push_back(*o);
    }
  } else if (key == "csv") {
    cfg.csv_path = std::filesystem::path(std::string(trim(s.value)));
  } else if (key == "svg") {
    cfg.svg_path = std::filesystem::path(std::string(trim(s.value)));
  } else {
    throw ParseError(s.line, key, "unknown key");
  }
}

SweepConfig make(std::vector<Variant> variants, std::vector<int> qubits, std::vector<double> betas,
                 std::vector<double> lambdas, std::vector<std::uint64_t> ns, std::vector<double> c0s,
                 Observable observable) {
  SweepConfig c;
  c.variants = std::move(variants);
  c.qubits = std::move(qubits);
  c.beta_values = std::move(betas);
  c.lambda_values = std::move(lambdas);
  c.n_values = std::move(ns);
  c.c0_values = std::move(c0s);
  c.observables = {observable};
  c.normalize();
  return c;
}

std::vector<FigurePreset> build_presets() {
  const std::vector<Variant> probability_trio{Variant::NaberI, Variant::NaberII, Variant::NewTFSE};
  const std::vector<Variant> xgf{Variant::XGF};
  const std::vector<Variant> all{Variant::NaberI, Variant::NaberII, Variant::XGF, Variant::NewTFSE};
  const std::string time_note = "time grid [0, 20] with 400 points is a chosen default";
  const auto total = Observable::Total;
  const auto excited = Observable::Excited;

  std::vector<FigurePreset> p;
  auto add = [&](std::string id, std::string note, SweepConfig cfg, Axis curve, PlotQuantity q, std::string title) {
    cfg.preset = id;
    p.push_back({std::move(id), std::move(note), std::move(cfg), Grouping{curve, q, std::move(title)}});
  };

  add("fig1", time_note, make(probability_trio, {1, 2}, {0.2, 0.6, 1.0}, {0.5}, {50}, {0.5}, total), Axis::Beta,
      PlotQuantity::Total, "Total probability, beta = 0.2, 0.6, 1");
  add("fig2", time_note, make(probability_trio, {1, 2}, {0.5}, {0.0, 0.5, 1.0}, {50}, {0.5}, total), Axis::Lambda,
      PlotQuantity::Total, "Total probability, lambda = 0, 0.5, 1");
  add("fig3", time_note, make(probability_trio, {1, 2}, {0.5}, {0.5}, {0, 100, 200}, {0.5}, total), Axis::Photons,
      PlotQuantity::Total, "Total probability, n = 0, 100, 200");
  add("fig4", time_note, make(probability_trio, {2}, {0.5}, {0.5}, {50}, {0.0, 0.5, 1.0}, total), Axis::Concurrence,
      PlotQuantity::Total, "Two-qubit total probability, C0 = 0, 0.5, 1");
  add("fig5", time_note, make(xgf, {1, 2}, {0.1, 0.5, 1.0}, {0.5}, {50}, {0.5}, total), Axis::Beta,
      PlotQuantity::Total, "XGF total probability, beta = 0.1, 0.5, 1");
  add("fig6", time_note, make(xgf, {1, 2}, {0.5}, {0.0, 0.5, 1.0}, {50}, {0.5}, total), Axis::Lambda,
      PlotQuantity::Total, "XGF total probability, lambda = 0, 0.5, 1");
  add("fig7", time_note, make(xgf, {1, 2}, {0.5}, {0.5}, {0, 50, 500}, {0.5}, total), Axis::Photons,
      PlotQuantity::Total, "XGF total probability, n = 0, 50, 500");
  add("fig8", time_note, make(xgf, {2}, {0.5}, {0.5}, {50}, {0.0, 0.5, 1.0}, total), Axis::Concurrence,
      PlotQuantity::Total, "XGF two-qubit total probability, C0 = 0, 0.5, 1");
  add("fig9", time_note, make(all, {1, 2}, {0.1, 0.3, 0.5, 0.7, 0.9, 1.0}, {0.5}, {20}, {0.5}, excited),
      Axis::Variant, PlotQuantity::Excited, "Excited-state probability, beta = 0.1 ... 1");
  add("fig10", time_note, make(all, {1, 2}, {0.8}, {0.5}, {0, 10, 50}, {0.5}, excited), Axis::Variant,
      PlotQuantity::Excited, "Excited-state probability, n = 0, 10, 50");
  add("fig11", time_note, make(all, {2}, {0.9}, {0.5}, {50}, {0.2, 0.6, 1.0}, excited), Axis::Variant,
      PlotQuantity::Excited, "Two-qubit excited-state probability, C0 = 0.2, 0.6, 1");
  add("fig12", time_note, make(all, {1, 2}, {0.8}, {0.0, 0.05, 0.1, 0.2, 0.6, 1.0}, {40}, {0.5}, excited),
      Axis::Variant, PlotQuantity::Excited, "Excited-state probability, lambda = 0 ... 1");
  add("fig13",
      time_note +
          "; the figure (n, beta) panels (0, 0.1), (10, 0.5), (50, 1) are covered by the full product, and the "
          "C0 axis 0, 0.25, 0.5, 0.75, 1 is a chosen default",
      make(all, {1, 2}, {0.1, 0.5, 1.0}, {0.0}, {0, 10, 50}, {0.0, 0.25, 0.5, 0.75, 1.0}, excited),
      Axis::Concurrence, PlotQuantity::Excited, "Decoupled limit lambda = 0");
  return p;
}

}  // namespace

std::string_view observable_key(Observable o) {
  switch (o) {
    case Observable::Total:
      return "total";
    case Observable::Excited:
      return "excited";
    case Observable::RhoDiag:
      return "rho_diag";
  }
  return "?";
}

std::optional<Observable> parse_observable(std::string_view key) {
  for (const auto o : {Observable::Total, Observable::Excited, Observable::RhoDiag}) {
    if (observable_key(o) == key) return o;
  }
  return std::nullopt;
}

void SweepConfig::validate() const {
  if (variants.empty()) throw ValidationError("variant: at least one value is required");
  if (qubits.empty()) throw ValidationError("qubits: at least one value is required");
  for (const int l : qubits) {
    if (l != 1 && l != 2) throw ValidationError("qubits = " + std::to_string(l) + " must be 1 or 2");
  }
  check_range(beta_values, 0.0, 1.0, true, "beta");
  check_range(lambda_values, 0.0, 1.0, false, "lambda");
  check_range(c0_values, 0.0, 1.0, false, "c0");
  if (n_values.empty()) throw ValidationError("n: at least one value is required");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ValidationError("tmax must be positive");
  if (t_steps < 2) throw ValidationError("steps must be at least 2");
  if (observables.empty()) throw ValidationError("observables: at least one value is required");
}

void SweepConfig::normalize() {
  sort_unique(variants);
  sort_unique(qubits);
  sort_unique(beta_values);
  sort_unique(lambda_values);
  sort_unique(n_values);
  sort_unique(c0_values);
  sort_unique(observables);
}

bool SweepConfig::wants(Observable o) const {
  return std::find(observables.begin(), observables.end(), o) != observables.end();
}

std::size_t SweepConfig::row_count() const {
  return variants.size() * qubits.size() * beta_values.size() * lambda_values.size() * n_values.size() *
         c0_values.size() * t_steps;
}

std::vector<double> SweepConfig::time_grid() const {
  std::vector<double> grid(t_steps);
  const double denom = static_cast<double>(t_steps - 1);
  for (std::size_t k = 0; k < t_steps; ++k) grid[k] = t_max * static_cast<double>(k) / denom;
  return grid;
}

Settings parse_settings(std::string_view text) {
  Settings out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "", "expected key=value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ParseError(line_no, "", "missing key");
    if (!is_known_key(key)) throw ParseError(line_no, key, "unknown key");
    if (value.empty()) throw ParseError(line_no, key, "missing value");
    const std::string canonical = key == "l" ? "qubits" : key;
    if (out.contains(canonical)) throw ParseError(line_no, key, "key given more than once");
    out.emplace(canonical, Setting{value, line_no});
  }
  return out;
}

SweepConfig config_from_settings(const Settings& settings) {
  SweepConfig cfg;
  if (const auto it = settings.find("preset"); it != settings.end()) {
    cfg = find_preset(trim(it->second.value)).config;
  }
  for (const auto& [key, setting] : settings) {
    if (key == "preset") continue;
    apply(cfg, key, setting);
  }
  cfg.normalize();
  cfg.validate();
  return cfg;
}

SweepConfig parse_config(std::string_view text) { return config_from_settings(parse_settings(text)); }

SweepConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::span<const FigurePreset> figure_presets() {
  static const std::vector<FigurePreset> presets = build_presets();
  return presets;
}

const FigurePreset& find_preset(std::string_view id) {
  for (const auto& p : figure_presets()) {
    if (p.id == id) return p;
  }
  throw ValidationError("unknown preset '" + std::string(id) + "' (expected fig1 ... fig13)");
}

Grouping default_grouping(const SweepConfig& config) {
  Grouping g;
  if (config.beta_values.size() > 1) {
    g.curve_by = Axis::Beta;
  } else if (config.lambda_values.size() > 1) {
    g.curve_by = Axis::Lambda;
  } else if (config.n_values.size() > 1) {
    g.curve_by = Axis::Photons;
  } else if (config.c0_values.size() > 1) {
    g.curve_by = Axis::Concurrence;
  } else {
    g.curve_by = Axis::Variant;
  }
  const bool excited_only = config.wants(Observable::Excited) && !config.wants(Observable::Total);
  g.quantity = excited_only ? PlotQuantity::Excited : PlotQuantity::Total;
  g.title = excited_only ? "Excited-state probability" : "Total probability";
  return g;
}

}  // namespace fracdyn::sweep
