#include "fracdyn/report.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <tuple>

namespace fracdyn::sweep {
namespace {

constexpr double kPanelWidth = 420.0;
constexpr double kPanelHeight = 300.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 130.0;
constexpr double kMarginTop = 36.0;
constexpr double kMarginBottom = 44.0;
constexpr double kTitleHeight = 34.0;
constexpr std::size_t kMaxColumns = 3;
// Switch to a log axis once the data spans more than this many decades.
constexpr double kLogDecades = 3.0;

constexpr std::array<std::string_view, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                   "#9467bd", "#8c564b", "#e377c2", "#17becf"};

using AxisValue = std::tuple<int, double>;  // variants and integers are stored through the int slot

AxisValue axis_value(const ResultRow& r, Axis a) {
  switch (a) {
    case Axis::Variant:
      return {static_cast<int>(r.variant), 0.0};
    case Axis::Qubits:
      return {r.qubits, 0.0};
    case Axis::Beta:
      return {0, r.beta};
    case Axis::Lambda:
      return {0, r.lambda};
    case Axis::Photons:
      return {0, static_cast<double>(r.n)};
    case Axis::Concurrence:
      return {0, r.c0};
  }
  return {0, 0.0};
}

std::string_view axis_name(Axis a) {
  switch (a) {
    case Axis::Variant:
      return "variant";
    case Axis::Qubits:
      return "l";
    case Axis::Beta:
      return "beta";
    case Axis::Lambda:
      return "lambda";
    case Axis::Photons:
      return "n";
    case Axis::Concurrence:
      return "C0";
  }
  return "?";
}

std::string axis_label(Axis a, const AxisValue& v) {
  if (a == Axis::Variant) return std::string(propagate::info(static_cast<propagate::Variant>(std::get<0>(v))).key);
  if (a == Axis::Qubits) return fmt::format("l={}", std::get<0>(v));
  return fmt::format("{}={:g}", axis_name(a), std::get<1>(v));
}

constexpr std::array<Axis, 6> kAxes{Axis::Variant, Axis::Qubits,  Axis::Beta,
                                    Axis::Lambda,  Axis::Photons, Axis::Concurrence};

struct Curve {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct Panel {
  std::string label;
  std::vector<Curve> curves;
};

std::string escape(std::string_view s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  double nice = 10.0;
  if (frac <= 1.0) {
    nice = 1.0;
  } else if (frac <= 2.0) {
    nice = 2.0;
  } else if (frac <= 5.0) {
    nice = 5.0;
  }
  return nice * mag;
}

struct Scale {
  double lo;
  double hi;
  bool log;
  std::vector<double> ticks;

  double map(double v) const {
    const double x = log ? std::log10(v) : v;
    return (x - lo) / (hi - lo);
  }
};

Scale linear_scale(double lo, double hi) {
  // Spans at rounding level (a conserved quantity) are drawn as a flat line.
  if (!(hi - lo > 1e-9 * std::max({1.0, std::abs(lo), std::abs(hi)}))) {
    lo = hi = (lo + hi) / 2.0;
    const double pad = std::max(std::abs(lo) * 0.05, 0.05);
    lo -= pad;
    hi += pad;
  }
  const double step = nice_step(hi - lo, 5);
  Scale s{std::floor(lo / step) * step, std::ceil(hi / step) * step, false, {}};
  for (double v = s.lo; v <= s.hi + step * 1e-9; v += step) s.ticks.push_back(std::abs(v) < step * 1e-9 ? 0.0 : v);
  return s;
}

Scale log_scale(double lo, double hi) {
  Scale s{std::floor(std::log10(lo)), std::ceil(std::log10(hi)), true, {}};
  if (s.hi <= s.lo) s.hi = s.lo + 1.0;
  const double step = std::max(1.0, std::ceil((s.hi - s.lo) / 6.0));
  for (double v = s.lo; v <= s.hi + 1e-9; v += step) s.ticks.push_back(v);
  return s;
}

std::string tick_text(const Scale& s, double v) {
  if (s.log) return fmt::format("1e{:g}", v);
  return fmt::format("{:g}", v);
}

double quantity(const ResultRow& r, PlotQuantity q) { return q == PlotQuantity::Total ? r.p_total : r.p_excited; }

std::vector<Panel> collect(const ResultTable& table, const Grouping& grouping) {
  // Axes that take more than one value label the panels.
  std::vector<Axis> varying;
  for (const Axis a : kAxes) {
    if (a == grouping.curve_by) continue;
    const auto first = axis_value(table.rows.front(), a);
    const bool varies = std::any_of(table.rows.begin(), table.rows.end(),
                                    [&](const ResultRow& r) { return axis_value(r, a) != first; });
    if (varies) varying.push_back(a);
  }

  std::map<std::vector<AxisValue>, std::map<AxisValue, Curve>> grouped;
  for (const auto& r : table.rows) {
    std::vector<AxisValue> key;
    for (const Axis a : varying) key.push_back(axis_value(r, a));
    const AxisValue cv = axis_value(r, grouping.curve_by);
    auto& curve = grouped[key][cv];
    if (curve.label.empty()) curve.label = axis_label(grouping.curve_by, cv);
    curve.points.emplace_back(r.t, quantity(r, grouping.quantity));
  }

  std::vector<Panel> panels;
  for (auto& [key, curves] : grouped) {
    Panel p;
    for (std::size_t i = 0; i < varying.size(); ++i) {
      if (!p.label.empty()) p.label += ", ";
      p.label += axis_label(varying[i], key[i]);
    }
    for (auto& [cv, curve] : curves) {
      if (curve.points.size() < 2) {
        throw EmptySelection("curve " + curve.label + " has fewer than two points");
      }
      std::stable_sort(curve.points.begin(), curve.points.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      p.curves.push_back(std::move(curve));
    }
    panels.push_back(std::move(p));
  }
  return panels;
}

void draw_panel(std::string& out, const Panel& panel, double ox, double oy, std::string_view y_name) {
  auto it = std::back_inserter(out);
  double tmin = INFINITY, tmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY, ypos = INFINITY;
  for (const auto& c : panel.curves) {
    for (const auto& [t, y] : c.points) {
      tmin = std::min(tmin, t);
      tmax = std::max(tmax, t);
      if (!std::isfinite(y)) continue;
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
      if (y > 0.0) ypos = std::min(ypos, y);
    }
  }
  if (!std::isfinite(ymin)) ymin = ymax = 0.0;
  const bool use_log = ymin > 0.0 && std::log10(ymax / ypos) > kLogDecades;
  const Scale xs = linear_scale(tmin, tmax);
  const Scale ys = use_log ? log_scale(ypos, ymax) : linear_scale(ymin, ymax);

  const double w = kPanelWidth - kMarginLeft - kMarginRight;
  const double h = kPanelHeight - kMarginTop - kMarginBottom;
  const double x0 = ox + kMarginLeft;
  const double y0 = oy + kMarginTop;
  auto px = [&](double t) { return x0 + xs.map(t) * w; };
  auto py = [&](double y) { return y0 + (1.0 - ys.map(y)) * h; };

  if (!panel.label.empty()) {
    fmt::format_to(it, "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" font-size=\"13\">{}</text>\n",
                   x0 + w / 2.0, oy + 22.0, escape(panel.label));
  }
  fmt::format_to(it, "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" stroke=\"#000\"/>\n",
                 x0, y0, w, h);

  for (const double v : xs.ticks) {
    const double x = x0 + (v - xs.lo) / (xs.hi - xs.lo) * w;
    fmt::format_to(it, "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"#ddd\"/>\n", x, y0,
                   y0 + h);
    fmt::format_to(it, "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" font-size=\"11\">{}</text>\n", x,
                   y0 + h + 15.0, tick_text(xs, v));
  }
  for (const double v : ys.ticks) {
    const double y = y0 + (1.0 - (v - ys.lo) / (ys.hi - ys.lo)) * h;
    fmt::format_to(it, "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"#ddd\"/>\n", x0, y,
                   x0 + w);
    fmt::format_to(it, "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\" font-size=\"11\">{}</text>\n", x0 - 5.0,
                   y + 4.0, tick_text(ys, v));
  }
  fmt::format_to(it, "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" font-size=\"12\">t</text>\n",
                 x0 + w / 2.0, y0 + h + 34.0);
  fmt::format_to(it,
                 "<text x=\"{0:.2f}\" y=\"{1:.2f}\" text-anchor=\"middle\" font-size=\"12\" "
                 "transform=\"rotate(-90 {0:.2f} {1:.2f})\">{2}</text>\n",
                 ox + 16.0, y0 + h / 2.0, y_name);

  for (std::size_t i = 0; i < panel.curves.size(); ++i) {
    const auto& c = panel.curves[i];
    const auto colour = kPalette[i % kPalette.size()];
    out += "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"";
    out += colour;
    out += "\" points=\"";
    bool first = true;
    for (const auto& [t, y] : c.points) {
      if (!std::isfinite(y) || (use_log && y <= 0.0)) continue;
      fmt::format_to(it, "{}{:.2f},{:.2f}", first ? "" : " ", px(t), py(y));
      first = false;
    }
    out += "\"/>\n";

    const double ly = y0 + 10.0 + 18.0 * static_cast<double>(i);
    fmt::format_to(it,
                   "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"{3}\" "
                   "stroke-width=\"2\"/>\n",
                   x0 + w + 10.0, ly, x0 + w + 30.0, colour);
    fmt::format_to(it, "<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"11\">{}</text>\n", x0 + w + 35.0, ly + 4.0,
                   escape(c.label));
  }
}

}  // namespace

std::string render_svg(const ResultTable& table, const Grouping& grouping) {
  if (table.rows.empty()) throw EmptySelection("nothing to plot: the table is empty");
  const auto panels = collect(table, grouping);

  const std::size_t cols = std::min(kMaxColumns, panels.size());
  const std::size_t rows = (panels.size() + cols - 1) / cols;
  const double width = kPanelWidth * static_cast<double>(cols);
  const double height = kTitleHeight + kPanelHeight * static_cast<double>(rows);
  const std::string_view y_name = grouping.quantity == PlotQuantity::Total ? "P_total" : "P_excited";

  std::string out;
  auto it = std::back_inserter(out);
  fmt::format_to(it,
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.0f}\" height=\"{1:.0f}\" "
                 "viewBox=\"0 0 {0:.0f} {1:.0f}\" font-family=\"sans-serif\">\n",
                 width, height);
  fmt::format_to(it, "<rect width=\"{:.0f}\" height=\"{:.0f}\" fill=\"#fff\"/>\n", width, height);
  fmt::format_to(it, "<text x=\"{:.2f}\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n", width / 2.0,
                 escape(grouping.title));
  for (std::size_t i = 0; i < panels.size(); ++i) {
    const double ox = kPanelWidth * static_cast<double>(i % cols);
    const double oy = kTitleHeight + kPanelHeight * static_cast<double>(i / cols);
    draw_panel(out, panels[i], ox, oy, y_name);
  }
  out += "</svg>\n";
  return out;
}

void emit_svg(const ResultTable& table, const Grouping& grouping, const std::filesystem::path& path) {
  const std::string svg = render_svg(table, grouping);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << svg;
  out.close();
  if (!out) throw IoError("failed to write " + path.string());
}

}  // namespace fracdyn::sweep
