#include "anw/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <vector>

namespace anw::render {

namespace {

struct Rgb {
  double r, g, b;
};

// Control points sampled from matplotlib's viridis.
constexpr std::array<Rgb, 9> kViridis{{{0.267, 0.005, 0.329},
                                       {0.279, 0.175, 0.483},
                                       {0.230, 0.322, 0.546},
                                       {0.173, 0.449, 0.558},
                                       {0.128, 0.567, 0.551},
                                       {0.153, 0.683, 0.502},
                                       {0.369, 0.789, 0.383},
                                       {0.678, 0.864, 0.190},
                                       {0.993, 0.906, 0.144}}};

// Cyclic map for phases: the ends meet so -pi and pi share a colour.
constexpr std::array<Rgb, 9> kCyclic{{{0.886, 0.851, 0.886},
                                      {0.541, 0.690, 0.788},
                                      {0.369, 0.420, 0.749},
                                      {0.278, 0.157, 0.435},
                                      {0.184, 0.078, 0.216},
                                      {0.455, 0.133, 0.271},
                                      {0.714, 0.361, 0.290},
                                      {0.827, 0.631, 0.541},
                                      {0.886, 0.851, 0.886}}};

template <std::size_t N>
std::string colour(const std::array<Rgb, N>& map, double t) {
  t = std::clamp(t, 0.0, 1.0) * static_cast<double>(N - 1);
  const auto k = std::min(static_cast<std::size_t>(t), N - 2);
  const double f = t - static_cast<double>(k);
  auto channel = [&](double a, double b) { return static_cast<int>(std::lround(255.0 * (a + f * (b - a)))); };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", channel(map[k].r, map[k + 1].r), channel(map[k].g, map[k + 1].g),
                channel(map[k].b, map[k + 1].b));
  return buf;
}

std::string num(double v, int digits = 2) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string s = buf;
  if (s == "-0.00" || s == "-0.0" || s == "-0") s.erase(0, 1);
  return s;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

double cell_size(std::size_t n) { return std::clamp(420.0 / static_cast<double>(std::max<std::size_t>(n, 1)), 2.0, 40.0); }

constexpr double kMargin = 40.0;
constexpr double kTitle = 30.0;
constexpr double kBar = 14.0;
constexpr double kBarGap = 10.0;
constexpr double kBarLabels = 60.0;

// One heatmap panel with its colour bar, origin at (x0, y0).
struct Panel {
  std::string heading;
  std::size_t rows, cols;
  // Colour of cell (i, j), or an empty string to leave the background.
  std::function<std::string(std::size_t, std::size_t)> fill;
  std::string bar_low, bar_high;
  std::function<std::string(double)> bar_colour;
};

double panel_width(const Panel& p) {
  return cell_size(std::max(p.rows, p.cols)) * static_cast<double>(p.cols) + kBarGap + kBar + kBarLabels;
}

double panel_height(const Panel& p) { return cell_size(std::max(p.rows, p.cols)) * static_cast<double>(p.rows) + 24.0; }

void draw_panel(std::string& svg, const Panel& p, double x0, double y0) {
  const double c = cell_size(std::max(p.rows, p.cols));
  const double w = c * static_cast<double>(p.cols);
  const double h = c * static_cast<double>(p.rows);
  svg += "<text x=\"" + num(x0 + w / 2) + "\" y=\"" + num(y0 - 6) + "\" text-anchor=\"middle\" font-size=\"13\">" +
         escape(p.heading) + "</text>\n";
  svg += "<rect x=\"" + num(x0) + "\" y=\"" + num(y0) + "\" width=\"" + num(w) + "\" height=\"" + num(h) +
         "\" fill=\"#d9d9d9\"/>\n";
  for (std::size_t i = 0; i < p.rows; ++i)
    for (std::size_t j = 0; j < p.cols; ++j) {
      const std::string f = p.fill(i, j);
      if (f.empty()) continue;
      svg += "<rect x=\"" + num(x0 + c * static_cast<double>(j)) + "\" y=\"" + num(y0 + c * static_cast<double>(i)) +
             "\" width=\"" + num(c) + "\" height=\"" + num(c) + "\" fill=\"" + f + "\"/>\n";
    }
  // Axis ticks at 1, N and a few evenly spaced indices in between.
  const std::size_t n = std::max(p.rows, p.cols);
  const std::size_t stride = std::max<std::size_t>(1, (n + 4) / 5);
  for (std::size_t k = 0; k < n; k += stride) {
    const double mid = c * (static_cast<double>(k) + 0.5);
    if (k < p.cols)
      svg += "<text x=\"" + num(x0 + mid) + "\" y=\"" + num(y0 + h + 14) +
             "\" text-anchor=\"middle\" font-size=\"10\">" + std::to_string(k + 1) + "</text>\n";
    if (k < p.rows)
      svg += "<text x=\"" + num(x0 - 4) + "\" y=\"" + num(y0 + mid + 3) + "\" text-anchor=\"end\" font-size=\"10\">" +
             std::to_string(k + 1) + "</text>\n";
  }
  // Colour bar drawn as 64 bands, high values at the top.
  const double bx = x0 + w + kBarGap;
  constexpr int kBands = 64;
  for (int b = 0; b < kBands; ++b) {
    const double t = 1.0 - (b + 0.5) / kBands;
    svg += "<rect x=\"" + num(bx) + "\" y=\"" + num(y0 + h * b / kBands) + "\" width=\"" + num(kBar) +
           "\" height=\"" + num(h / kBands + 0.05) + "\" fill=\"" + p.bar_colour(t) + "\"/>\n";
  }
  svg += "<text x=\"" + num(bx + kBar + 4) + "\" y=\"" + num(y0 + 10) + "\" font-size=\"10\">" + escape(p.bar_high) +
         "</text>\n";
  svg += "<text x=\"" + num(bx + kBar + 4) + "\" y=\"" + num(y0 + h) + "\" font-size=\"10\">" + escape(p.bar_low) +
         "</text>\n";
}

std::string document(const std::vector<Panel>& panels, const std::string& title) {
  double width = kMargin, height = 0.0;
  for (const Panel& p : panels) {
    width += panel_width(p) + kMargin;
    height = std::max(height, panel_height(p));
  }
  height += kTitle + kMargin + 10.0;
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width, 0) + "\" height=\"" +
                    num(height, 0) + "\" viewBox=\"0 0 " + num(width, 0) + " " + num(height, 0) +
                    "\" font-family=\"sans-serif\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(width / 2) + "\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">" + escape(title) +
         "</text>\n";
  double x = kMargin;
  for (const Panel& p : panels) {
    draw_panel(svg, p, x, kTitle + 24.0);
    x += panel_width(p) + kMargin;
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace

std::string complex_heatmap(const ComplexMatrix& m, const std::string& title) {
  const double peak = max_abs(m);
  // Phases of entries this small relative to the peak are noise; they stay grey.
  const double floor = 1e-12 * peak;
  Panel mag{"|entry|", m.rows(), m.cols(),
            [&](std::size_t i, std::size_t j) {
              return colour(kViridis, peak > 0.0 ? std::abs(m(i, j)) / peak : 0.0);
            },
            "0", num(peak, 4), [](double t) { return colour(kViridis, t); }};
  Panel phase{"phase / pi", m.rows(), m.cols(),
              [&](std::size_t i, std::size_t j) -> std::string {
                if (!(std::abs(m(i, j)) > floor)) return {};
                return colour(kCyclic, 0.5 + std::arg(m(i, j)) / (2.0 * std::numbers::pi));
              },
              "-1", "1", [](double t) { return colour(kCyclic, t); }};
  return document({mag, phase}, title);
}

std::string real_heatmap(const RealMatrix& m, const std::string& title) {
  double peak = 0.0;
  for (double v : m.values()) peak = std::max(peak, std::abs(v));
  Panel p{"", m.rows(), m.cols(),
          [&](std::size_t i, std::size_t j) { return colour(kViridis, peak > 0.0 ? std::abs(m(i, j)) / peak : 0.0); },
          "0", num(peak, 4), [](double t) { return colour(kViridis, t); }};
  return document({p}, title);
}

std::string pump_bars(std::span<const double> amplitudes, std::span<const double> phases, const std::string& title) {
  if (amplitudes.size() != phases.size()) throw ValidationError("pump chart: amplitudes and phases differ in length");
  const std::size_t n = amplitudes.size();
  const double plot_w = std::max(300.0, 8.0 * static_cast<double>(n));
  const double plot_h = 140.0;
  const double bar_w = plot_w / static_cast<double>(std::max<std::size_t>(n, 1));
  const double width = plot_w + 2 * kMargin + 20.0;
  const double height = kTitle + 2 * (plot_h + 40.0) + 20.0;

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width, 0) + "\" height=\"" +
                    num(height, 0) + "\" viewBox=\"0 0 " + num(width, 0) + " " + num(height, 0) +
                    "\" font-family=\"sans-serif\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(width / 2) + "\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">" + escape(title) +
         "</text>\n";

  double amp_max = 0.0;
  for (double a : amplitudes) amp_max = std::max(amp_max, a);
  if (amp_max <= 0.0) amp_max = 1.0;

  auto axes = [&](double y0, const std::string& label, const std::string& top, const std::string& bottom) {
    const double x0 = kMargin + 20.0;
    svg += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(x0) + "\" y2=\"" + num(y0 + plot_h) +
           "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y0 + plot_h) + "\" x2=\"" + num(x0 + plot_w) + "\" y2=\"" +
           num(y0 + plot_h) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + num(x0 - 4) + "\" y=\"" + num(y0 + 8) + "\" text-anchor=\"end\" font-size=\"10\">" + top +
           "</text>\n";
    svg += "<text x=\"" + num(x0 - 4) + "\" y=\"" + num(y0 + plot_h) + "\" text-anchor=\"end\" font-size=\"10\">" +
           bottom + "</text>\n";
    svg += "<text x=\"" + num(x0 + plot_w / 2) + "\" y=\"" + num(y0 - 6) +
           "\" text-anchor=\"middle\" font-size=\"12\">" + label + "</text>\n";
    svg += "<text x=\"" + num(x0 + plot_w / 2) + "\" y=\"" + num(y0 + plot_h + 16) +
           "\" text-anchor=\"middle\" font-size=\"10\">waveguide 1.." + std::to_string(n) + "</text>\n";
    return x0;
  };

  const double amp_y = kTitle + 24.0;
  const double x0 = axes(amp_y, "|eta_j|", num(amp_max, 3), "0");
  const double phase_y = amp_y + plot_h + 44.0;
  axes(phase_y, "phi_j / pi", "2", "0");
  for (std::size_t j = 0; j < n; ++j) {
    const double x = x0 + bar_w * static_cast<double>(j) + 0.1 * bar_w;
    const double ha = plot_h * amplitudes[j] / amp_max;
    svg += "<rect x=\"" + num(x) + "\" y=\"" + num(amp_y + plot_h - ha) + "\" width=\"" + num(0.8 * bar_w) +
           "\" height=\"" + num(ha) + "\" fill=\"#3b528b\"/>\n";
    double turns = std::fmod(phases[j], 2.0 * std::numbers::pi);
    if (turns < 0.0) turns += 2.0 * std::numbers::pi;
    const double hp = plot_h * turns / (2.0 * std::numbers::pi);
    svg += "<rect x=\"" + num(x) + "\" y=\"" + num(phase_y + plot_h - hp) + "\" width=\"" + num(0.8 * bar_w) +
           "\" height=\"" + num(hp) + "\" fill=\"#b73779\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace anw::render
