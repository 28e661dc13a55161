// simulate: run a parameter sweep and write CSV / SVG.
//
//   simulate --config run.cfg
//   simulate --preset fig9 --out results/
//   simulate --variant new,naber1 --qubits 1 --beta 0.5 --csv out.csv --svg out.svg

#include "fracdyn/report.hpp"
#include "fracdyn/sweep.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace fracdyn;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct Options {
  std::string config_path;
  std::string out_dir;
  bool list_presets = false;
  std::map<std::string, std::string> flags;
};

sweep::Settings read_settings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return sweep::parse_settings(text.str());
}

int run(const Options& opt) {
  if (opt.list_presets) {
    for (const auto& p : sweep::figure_presets()) {
      std::cout << p.id << "  " << p.grouping.title << "\n    " << p.note << "\n";
    }
    return kExitOk;
  }

  sweep::Settings settings;
  if (!opt.config_path.empty()) settings = read_settings(opt.config_path);
  for (const auto& [key, value] : opt.flags) settings[key] = sweep::Setting{value, 0};

  const sweep::SweepConfig config = sweep::config_from_settings(settings);
  const sweep::Grouping grouping =
      config.preset ? sweep::find_preset(*config.preset).grouping : sweep::default_grouping(config);

  std::optional<std::filesystem::path> csv_path = config.csv_path;
  std::optional<std::filesystem::path> svg_path = config.svg_path;
  if (!opt.out_dir.empty()) {
    const std::filesystem::path dir(opt.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    const std::string stem = config.preset.value_or("sweep");
    if (!csv_path) csv_path = dir / (stem + ".csv");
    if (!svg_path) svg_path = dir / (stem + ".svg");
  }

  const sweep::ResultTable table = sweep::run_sweep(config);
  if (csv_path) {
    sweep::write_csv(table, *csv_path);
  } else {
    sweep::write_csv(table, std::cout);
  }
  if (svg_path) sweep::emit_svg(table, grouping, *svg_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-fractional qubit-cavity dynamics: parameter sweeps to CSV and SVG"};
  Options opt;
  app.add_option("--config", opt.config_path, "key=value configuration file");
  app.add_option("--out", opt.out_dir, "directory for <preset>.csv and <preset>.svg");
  app.add_flag("--list-presets", opt.list_presets, "print the figure presets and exit");

  // Every sweep flag is passed through as a config setting, so the command
  // line and config files share one parser and one set of diagnostics.
  const std::vector<std::pair<std::string, std::string>> passthrough{
      {"preset", "figure preset fig1 ... fig13"},
      {"variant", "naber1, naber2, xgf, new (comma-separated)"},
      {"qubits", "1 or 2 (comma-separated)"},
      {"beta", "fractional orders in (0, 1]"},
      {"lambda", "couplings in [0, 1]"},
      {"n", "initial photon numbers"},
      {"c0", "initial concurrences in [0, 1]"},
      {"tmax", "end of the time grid"},
      {"steps", "number of time points (>= 2)"},
      {"observables", "total, excited, rho_diag"},
      {"csv", "CSV output path (stdout if omitted)"},
      {"svg", "SVG output path"},
  };
  std::map<std::string, std::string> raw;
  for (const auto& [key, help] : passthrough) {
    app.add_option("--" + key, raw[key], help);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }
  for (const auto& [key, help] : passthrough) {
    if (app.count("--" + key) > 0) opt.flags[key] = raw[key];
  }

  try {
    return run(opt);
  } catch (const ValidationError& e) {
    std::cerr << "simulate: invalid configuration: " << e.what() << '\n';
    return kExitValidation;
  } catch (const DomainError& e) {
    std::cerr << "simulate: invalid configuration: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalError& e) {
    std::cerr << "simulate: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "simulate: " << e.what() << '\n';
    return kExitIo;
  }
}
