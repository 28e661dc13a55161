#include "fracdyn/errors.hpp"
#include "fracdyn/report.hpp"
#include "fracdyn/sweep.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace {

using namespace fracdyn;
using namespace fracdyn::sweep;
using propagate::Variant;
using fracdyn::testkit::data_dir;

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("fracdyn_test_" + name);
}

TEST(ParseConfig, MinimalDocumentFillsDefaults) {
  const auto cfg = parse_config("variant=new\nl=1\nbeta=0.5\n");
  EXPECT_EQ(cfg.variants, std::vector<Variant>{Variant::NewTFSE});
  EXPECT_EQ(cfg.qubits, std::vector<int>{1});
  EXPECT_EQ(cfg.beta_values, std::vector<double>{0.5});
  EXPECT_EQ(cfg.lambda_values, std::vector<double>{0.5});
  EXPECT_EQ(cfg.n_values, std::vector<std::uint64_t>{50});
  EXPECT_EQ(cfg.t_max, 20.0);
  EXPECT_EQ(cfg.t_steps, 400u);
}

TEST(ParseConfig, CommentsListsAndWhitespace) {
  const auto cfg = parse_config(
      "# a sweep\n"
      "variant = naber1, xgf   # trailing comment\n"
      "\n"
      "qubits=2\n"
      "beta=0.9,0.3,0.3\n"
      "n=0,10\n"
      "c0=1\n"
      "tmax=5\n"
      "steps=11\n"
      "observables=excited,rho_diag\n");
  EXPECT_EQ(cfg.variants, (std::vector<Variant>{Variant::NaberI, Variant::XGF}));
  EXPECT_EQ(cfg.beta_values, (std::vector<double>{0.3, 0.9}));
  EXPECT_EQ(cfg.n_values, (std::vector<std::uint64_t>{0, 10}));
  EXPECT_EQ(cfg.t_steps, 11u);
  EXPECT_TRUE(cfg.wants(Observable::RhoDiag));
  EXPECT_FALSE(cfg.wants(Observable::Total));
  EXPECT_EQ(cfg.row_count(), 2u * 1 * 2 * 1 * 2 * 1 * 11);
}

TEST(ParseConfig, OutOfRangeIsValidationError) {
  EXPECT_THROW(parse_config("beta=1.5\n"), ValidationError);
  EXPECT_THROW(parse_config("beta=0\n"), ValidationError);
  EXPECT_THROW(parse_config("lambda=-0.1\n"), ValidationError);
  EXPECT_THROW(parse_config("c0=2\n"), ValidationError);
  EXPECT_THROW(parse_config("qubits=3\n"), ValidationError);
  EXPECT_THROW(parse_config("steps=1\n"), ValidationError);
  EXPECT_THROW(parse_config("tmax=0\n"), ValidationError);
  EXPECT_THROW(parse_config("n=-1\n"), ValidationError);
}

TEST(ParseConfig, StrictKeys) {
  try {
    parse_config("beta=0.5\ngamma=1\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.field(), "gamma");
  }
  EXPECT_THROW(parse_config("beta=0.5\nbeta=0.6\n"), ParseError);
  EXPECT_THROW(parse_config("l=1\nqubits=2\n"), ParseError);
  EXPECT_THROW(parse_config("just words\n"), ParseError);
  EXPECT_THROW(parse_config("=3\n"), ParseError);
  EXPECT_THROW(parse_config("beta=\n"), ParseError);
}

TEST(ParseConfig, MalformedValues) {
  try {
    parse_config("variant=new\nbeta=0.5,abc\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.field(), "beta");
  }
  EXPECT_THROW(parse_config("variant=new,,xgf\n"), ParseError);
  EXPECT_THROW(parse_config("variant=naber3\n"), ParseError);
  EXPECT_THROW(parse_config("n=1.5\n"), ParseError);
  EXPECT_THROW(parse_config("observables=all\n"), ParseError);
  EXPECT_THROW(parse_config("beta=nan\n"), ParseError);
}

TEST(ParseConfig, PresetThenOverrides) {
  const auto cfg = parse_config("preset=fig9\nqubits=1\n");
  EXPECT_EQ(cfg.beta_values, (std::vector<double>{0.1, 0.3, 0.5, 0.7, 0.9, 1.0}));
  EXPECT_EQ(cfg.lambda_values, std::vector<double>{0.5});
  EXPECT_EQ(cfg.n_values, std::vector<std::uint64_t>{20});
  EXPECT_EQ(cfg.c0_values, std::vector<double>{0.5});
  EXPECT_EQ(cfg.qubits, std::vector<int>{1});
  EXPECT_EQ(cfg.preset, "fig9");
  EXPECT_THROW(parse_config("preset=fig14\n"), ValidationError);
}

TEST(ParseConfig, LoadFromFile) {
  const auto path = temp_path("cfg.txt");
  {
    std::ofstream out(path);
    out << "variant=xgf\nbeta=0.25\ncsv=out.csv\nsvg=out.svg\n";
  }
  const auto cfg = load_config(path);
  EXPECT_EQ(cfg.variants, std::vector<Variant>{Variant::XGF});
  EXPECT_EQ(cfg.csv_path, std::filesystem::path("out.csv"));
  EXPECT_EQ(cfg.svg_path, std::filesystem::path("out.svg"));
  std::filesystem::remove(path);
  EXPECT_THROW(load_config(temp_path("missing.txt")), IoError);
}

TEST(Presets, MatchCaptionTable) {
  std::ifstream in(data_dir() / "figure_captions.txt");
  ASSERT_TRUE(in);
  std::string line;
  std::size_t checked = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string id, variants, qubits, beta, lambda, n, c0, plot;
    ASSERT_TRUE(fields >> id >> variants >> qubits >> beta >> lambda >> n >> c0 >> plot) << line;
    SCOPED_TRACE(id);
    const auto& preset = find_preset(id);
    const auto expected = parse_config("variant=" + variants + "\nqubits=" + qubits + "\nbeta=" + beta +
                                       "\nlambda=" + lambda + "\nn=" + n + "\nc0=" + c0 + "\n");
    EXPECT_EQ(preset.config.variants, expected.variants);
    EXPECT_EQ(preset.config.qubits, expected.qubits);
    EXPECT_EQ(preset.config.beta_values, expected.beta_values);
    EXPECT_EQ(preset.config.lambda_values, expected.lambda_values);
    EXPECT_EQ(preset.config.n_values, expected.n_values);
    EXPECT_EQ(preset.config.c0_values, expected.c0_values);
    EXPECT_EQ(preset.grouping.quantity, plot == "total" ? PlotQuantity::Total : PlotQuantity::Excited);
    EXPECT_EQ(preset.config.t_max, 20.0);
    EXPECT_EQ(preset.config.t_steps, 400u);
    EXPECT_FALSE(preset.note.empty());
    EXPECT_NO_THROW(preset.config.validate());
    ++checked;
  }
  EXPECT_EQ(checked, 13u);
  EXPECT_EQ(figure_presets().size(), 13u);
}

TEST(RunSweep, RowCountAndOrder) {
  const auto& cfg = find_preset("fig1").config;
  const auto table = run_sweep(cfg);
  EXPECT_EQ(table.rows.size(), 3u * 3 * 400 * 2);
  EXPECT_EQ(table.rows.size(), cfg.row_count());
  auto key = [](const ResultRow& r) { return std::tuple(r.variant, r.qubits, r.beta, r.lambda, r.n, r.c0, r.t); };
  for (std::size_t i = 1; i < table.rows.size(); ++i) EXPECT_LT(key(table.rows[i - 1]), key(table.rows[i]));
}

TEST(RunSweep, DecoupledTotalIsOne) {
  auto cfg = parse_config("variant=naber1,naber2,xgf,new\nqubits=1,2\nbeta=0.3,0.7\nlambda=0\nsteps=50\n");
  for (const auto& r : run_sweep(cfg).rows) EXPECT_NEAR(r.p_total, 1.0, 1e-12);
}

TEST(RunSweep, RabiZeroAtPi) {
  auto cfg = parse_config("variant=new\nqubits=1\nbeta=1\nlambda=0.5\nn=0\nsteps=3\n");
  cfg.t_max = 2.0 * std::numbers::pi;
  const auto table = run_sweep(cfg);
  ASSERT_EQ(table.rows.size(), 3u);
  EXPECT_NEAR(table.rows[1].t, std::numbers::pi, 1e-15);
  EXPECT_NEAR(table.rows[1].p_excited, 0.0, 1e-12);
}

TEST(RunSweep, RhoDiagColumns) {
  const auto table = run_sweep(parse_config("variant=new\nqubits=1,2\nsteps=5\nobservables=rho_diag\n"));
  EXPECT_TRUE(table.with_rho_diag);
  for (const auto& r : table.rows) {
    const double sum = r.rho_diag[0] + r.rho_diag[1] + r.rho_diag[2] + r.rho_diag[3];
    EXPECT_NEAR(sum, r.p_total, 1e-12);
    if (r.qubits == 1) EXPECT_EQ(r.rho_diag[2], 0.0);
  }
}

TEST(RunSweep, NumericalFailureCarriesKey) {
  // The XGF factor exp(cos(pi beta / 2) t^beta alpha / beta) overflows at t = 5e5.
  SweepConfig cfg;
  cfg.variants = {Variant::XGF};
  cfg.beta_values = {0.1};
  cfg.lambda_values = {1.0};
  cfg.n_values = {500};
  cfg.t_max = 1e6;
  cfg.t_steps = 3;
  try {
    run_sweep(cfg);
    FAIL() << "expected SweepPointError";
  } catch (const SweepPointError& e) {
    EXPECT_NE(e.key().find("variant=xgf"), std::string::npos) << e.key();
    EXPECT_NE(e.key().find("beta=0.1"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find(e.key()), std::string::npos);
  }
}

TEST(Csv, EmptyTableIsHeaderOnly) {
  std::ostringstream out;
  write_csv(ResultTable{}, out);
  EXPECT_EQ(out.str(), "variant,l,beta,lambda,n,c0,t,p_total,p_excited\n");
}

TEST(Csv, OneRow) {
  ResultTable table;
  table.rows.push_back({Variant::XGF, 2, 0.5, 0.25, 7, 1.0, 1.0 / 3.0, 1.5, 0.125, {}});
  std::ostringstream out;
  write_csv(table, out);
  EXPECT_EQ(out.str(),
            "variant,l,beta,lambda,n,c0,t,p_total,p_excited\n"
            "xgf,2,0.5,0.25,7,1,0.333333333333,1.5,0.125\n");
}

TEST(Csv, RhoDiagColumnsLeaveSingleQubitBlank) {
  ResultTable table;
  table.with_rho_diag = true;
  table.rows.push_back({Variant::NewTFSE, 1, 1.0, 0.5, 0, 0.5, 0.0, 1.0, 1.0, {0.0, 1.0, 0.0, 0.0}});
  std::ostringstream out;
  write_csv(table, out);
  EXPECT_EQ(out.str(),
            "variant,l,beta,lambda,n,c0,t,p_total,p_excited,rho_11,rho_22,rho_33,rho_44\n"
            "new,1,1,0.5,0,0.5,0,1,1,0,1,,\n");
}

TEST(Csv, UnwritablePathIsIoError) {
  EXPECT_THROW(write_csv(ResultTable{}, std::filesystem::path("/nonexistent-dir/x.csv")), IoError);
}

TEST(Csv, ByteIdenticalAcrossRuns) {
  const auto& cfg = find_preset("fig1").config;
  std::ostringstream a, b;
  write_csv(run_sweep(cfg), a);
  write_csv(run_sweep(cfg), b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(Csv, GoldenFig1SingleQubit) {
  auto cfg = find_preset("fig1").config;
  cfg.qubits = {1};
  std::ostringstream out;
  write_csv(run_sweep(cfg), out);
  const std::string golden = read_file(data_dir() / "golden_fig1_l1.csv");
  ASSERT_FALSE(golden.empty());
  EXPECT_TRUE(out.str() == golden) << "fig1 (l=1) CSV differs from the checked-in golden file";
}

TEST(Svg, SingleRowIsEmptySelection) {
  ResultTable table;
  table.rows.push_back({Variant::NewTFSE, 1, 1.0, 0.5, 0, 0.5, 0.0, 1.0, 1.0, {}});
  EXPECT_THROW(render_svg(table, {}), EmptySelection);
  EXPECT_THROW(render_svg(ResultTable{}, {}), EmptySelection);
}

std::size_t count(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

TEST(Svg, Fig1LayoutHasThreeCurvesPerPanel) {
  const auto& preset = find_preset("fig1");
  const auto svg = render_svg(run_sweep(preset.config), preset.grouping);
  // 3 variants x 2 qubit counts = 6 panels, 3 beta curves each.
  EXPECT_EQ(count(svg, "<polyline"), 18u);
  EXPECT_EQ(count(svg, ">beta=0.2<"), 6u);
  EXPECT_NE(svg.find("naber2, l=2"), std::string::npos);
  EXPECT_NE(svg.find(preset.grouping.title), std::string::npos);
  EXPECT_EQ(svg.rfind("</svg>\n"), svg.size() - 7);
}

TEST(Svg, ConservedCurveIsFlat) {
  const auto cfg = parse_config("variant=new\nbeta=0.3,0.6\nsteps=50\n");
  const auto svg = render_svg(run_sweep(cfg), default_grouping(cfg));
  // Every vertex of a flat line at 1 shares one y coordinate.
  const auto start = svg.find("points=\"");
  ASSERT_NE(start, std::string::npos);
  const auto end = svg.find('"', start + 8);
  std::istringstream pts(svg.substr(start + 8, end - start - 8));
  std::string pair;
  std::set<std::string> ys;
  while (pts >> pair) ys.insert(pair.substr(pair.find(',') + 1));
  EXPECT_EQ(ys.size(), 1u);
}

TEST(Svg, DeterministicAndWritten) {
  const auto& preset = find_preset("fig5");
  const auto table = run_sweep(preset.config);
  const auto path = temp_path("fig5.svg");
  emit_svg(table, preset.grouping, path);
  EXPECT_EQ(read_file(path), render_svg(table, preset.grouping));
  std::filesystem::remove(path);
  // XGF spans many decades, so the y axis switches to log ticks.
  EXPECT_NE(render_svg(table, preset.grouping).find(">1e"), std::string::npos);
  EXPECT_THROW(emit_svg(table, preset.grouping, "/nonexistent-dir/x.svg"), IoError);
}

}  // namespace
