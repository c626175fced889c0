#include "smc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

namespace smc::svg {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v == 0.0 ? 0.0 : v);
  return buf;
}

constexpr const char* kRed = "#d62728";
constexpr const char* kBlue = "#1f77b4";

// Samples the input on an n x n grid spanning [-half, half]^2, drawn into the
// square (x0, y0, size).
void raster(Document& doc, const VisualInput& input, double half, int n, double x0, double y0,
            double size) {
  const double cell = size / n;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const double x = -half + (c + 0.5) * (2.0 * half / n);
      const double y = half - (r + 0.5) * (2.0 * half / n);
      doc.rect(x0 + c * cell, y0 + r * cell, cell, cell, gray(evaluate(input, x, y)));
    }
  }
}

}  // namespace

Document::Document(double width, double height) : width_(width), height_(height) {}

void Document::rect(double x, double y, double w, double h, std::string_view fill,
                    std::string_view extra) {
  body_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w) << "\" height=\""
        << num(h) << "\" fill=\"" << fill << '"';
  if (!extra.empty()) body_ << ' ' << extra;
  body_ << "/>\n";
}

void Document::line(double x1, double y1, double x2, double y2, std::string_view stroke,
                    double width, std::string_view extra) {
  body_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\""
        << num(y2) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width) << '"';
  if (!extra.empty()) body_ << ' ' << extra;
  body_ << "/>\n";
}

void Document::circle(double cx, double cy, double r, std::string_view stroke, std::string_view fill,
                      std::string_view extra) {
  body_ << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(r) << "\" stroke=\""
        << stroke << "\" fill=\"" << fill << '"';
  if (!extra.empty()) body_ << ' ' << extra;
  body_ << "/>\n";
}

void Document::text(double x, double y, std::string_view content, double size,
                    std::string_view anchor) {
  body_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\"" << num(size)
        << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor << "\">" << escape(content)
        << "</text>\n";
}

void Document::raw(std::string_view fragment) { body_ << fragment; }

std::string Document::str() const {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width_)
      << "\" height=\"" << num(height_) << "\" viewBox=\"0 0 " << num(width_) << ' ' << num(height_)
      << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << num(width_) << "\" height=\"" << num(height_)
      << "\" fill=\"white\"/>\n"
      << body_.str() << "</svg>\n";
  return out.str();
}

std::string escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
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

std::string gray(double level) {
  const int v = static_cast<int>(std::lround(std::clamp(level, 0.0, 1.0) * 255.0));
  char buf[24];
  std::snprintf(buf, sizeof(buf), "rgb(%d,%d,%d)", v, v, v);
  return buf;
}

std::string spectrum_chart(const Characterization& c) {
  const double width = 420.0;
  const double height = 240.0;
  const double left = 50.0;
  const double right = 10.0;
  const double top = 30.0;
  const double bottom = 40.0;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  const double base = top + plot_h;

  Document doc(width, height);
  const bool nonlinear = c.regime == Regime::nonlinear;
  std::vector<double> bars;
  if (nonlinear) {
    for (const auto& e : c.err_curve) bars.push_back(e.err);
  } else {
    bars = c.singular_values;
  }
  const std::size_t n = std::max<std::size_t>(bars.size(), 1);
  const double top_val = bars.empty() ? 0.0 : *std::max_element(bars.begin(), bars.end());
  const double scale = top_val > 0.0 ? plot_h / top_val : 0.0;
  const double slot = plot_w / static_cast<double>(n);

  doc.text(width / 2, 18, std::string(nonlinear ? "Err(p)" : "singular values") + " - input " +
                              std::to_string(c.input_id),
           12, "middle");
  doc.line(left, base, left + plot_w, base, "black", 1);
  doc.line(left, top, left, base, "black", 1);
  char label[48];
  std::snprintf(label, sizeof(label), "%.3g", top_val);
  doc.text(left - 4, top + 4, label, 10, "end");
  doc.text(left - 4, base, "0", 10, "end");

  for (std::size_t i = 0; i < bars.size(); ++i) {
    const double h = bars[i] * scale;
    const double x = left + slot * static_cast<double>(i) + 0.15 * slot;
    doc.rect(x, base - h, 0.7 * slot, h, nonlinear ? kRed : kBlue, "class=\"bar\"");
    const std::string tick = nonlinear ? std::to_string(c.err_curve[i].p) : std::to_string(i + 1);
    if (nonlinear || bars.size() <= 30) doc.text(x + 0.35 * slot, base + 14, tick, 9, "middle");
  }

  if (nonlinear && !c.singular_values.empty()) {
    // Singular values of D_s as dashed outlines, scaled up to the Err range.
    const std::size_t m = std::min(bars.size(), c.singular_values.size());
    const double s_top = c.singular_values.front();
    const double s_scale = s_top > 0.0 ? plot_h / s_top : 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double h = c.singular_values[i] * s_scale;
      const double x = left + slot * static_cast<double>(i) + 0.3 * slot;
      doc.rect(x, base - h, 0.4 * slot, h, "none",
               "class=\"sigma\" stroke=\"black\" stroke-dasharray=\"4,3\"");
    }
  }
  doc.text(width / 2, height - 8, nonlinear ? "p" : "i", 11, "middle");
  return doc.str();
}

std::string direction_panel(const Characterization& c, const VisualInput& input,
                            double sensor_diameter, double exploration_diameter) {
  const double size = 260.0;
  const double margin = 10.0;
  const double center = size / 2;
  const double reach = 0.5 * exploration_diameter;
  const double px = (size / 2 - margin) / reach;

  Document doc(size, size + 20);
  raster(doc, input, reach, 26, margin, margin, size - 2 * margin);
  doc.circle(center, center, 0.5 * sensor_diameter * px, kBlue, "none", "stroke-width=\"1.5\"");
  doc.circle(center, center, reach * px, kRed, "none", "stroke-width=\"1.5\"");

  const double len = reach * px;
  if (c.change_direction) {
    const auto& z = *c.change_direction;
    doc.line(center, center, center + len * z.x(), center - len * z.y(), kRed, 3, "id=\"z1\"");
  }
  if (c.invariant_direction) {
    const auto& z = *c.invariant_direction;
    doc.line(center, center, center + len * z.x(), center - len * z.y(), kBlue, 3,
             "id=\"z2\" stroke-dasharray=\"8,5\"");
  }
  doc.text(center, size + 14, "input " + std::to_string(c.input_id) + " (" +
                                  std::string(to_string(c.verdict)) + ")",
           11, "middle");
  return doc.str();
}

std::string patch_map_chart(const PatchMap& map, std::span<const VisualInput> inputs) {
  const int nu = map.n_u_bins();
  const int na = map.n_angle_bins();
  const double cell = 36.0;
  const double gap = 4.0;
  const double left = 50.0;
  const double top = 30.0;
  const double width = left + nu * (cell + gap) + 10;
  const double height = top + na * (cell + gap) + 40;

  Document doc(width, height);
  doc.text(width / 2, 18, "patches by uniformity (columns) and invariant angle (rows)", 11, "middle");
  for (int a = 0; a < na; ++a) {
    char label[32];
    std::snprintf(label, sizeof(label), "%.0f", 0.5 * (map.angle_edges[a] + map.angle_edges[a + 1]) * 180.0 / std::numbers::pi);
    doc.text(left - 6, top + a * (cell + gap) + cell / 2 + 4, label, 9, "end");
  }
  for (const auto& [bin, id] : map.cells) {
    const double x = left + bin.first * (cell + gap);
    const double y = top + bin.second * (cell + gap);
    doc.raw("<g class=\"patch\" data-input=\"" + std::to_string(id) + "\">\n");
    if (id < inputs.size()) raster(doc, inputs[id], 2.0, 8, x, y, cell);
    doc.rect(x, y, cell, cell, "none", "stroke=\"#444\" stroke-width=\"0.5\"");
    doc.raw("</g>\n");
  }
  doc.text(left + nu * (cell + gap) / 2, height - 12, "uniformity quantile bin", 10, "middle");
  return doc.str();
}

}  // namespace smc::svg
