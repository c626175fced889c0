#pragma once

#include <span>
#include <sstream>
#include <string>
#include <string_view>

#include "smc/characterize.hpp"
#include "smc/env.hpp"

namespace smc::svg {

/// Minimal standalone SVG writer. Coordinates are written with fixed
/// precision so identical inputs give identical bytes.
class Document {
 public:
  Document(double width, double height);

  void rect(double x, double y, double w, double h, std::string_view fill,
            std::string_view extra = {});
  void line(double x1, double y1, double x2, double y2, std::string_view stroke, double width,
            std::string_view extra = {});
  void circle(double cx, double cy, double r, std::string_view stroke, std::string_view fill = "none",
              std::string_view extra = {});
  void text(double x, double y, std::string_view content, double size = 11.0,
            std::string_view anchor = "start");
  void raw(std::string_view fragment);

  std::string str() const;

 private:
  double width_;
  double height_;
  std::ostringstream body_;
};

std::string escape(std::string_view s);
std::string gray(double level);

/// Bar chart of the singular values (linear regime) or of Err(p) with the
/// singular values as dashed outlines (nonlinear regime).
std::string spectrum_chart(const Characterization& c);

/// The input under the exploration disk with z_1 (solid red, id "z1") and
/// z_2 (dashed blue, id "z2") drawn from the patch center.
std::string direction_panel(const Characterization& c, const VisualInput& input,
                            double sensor_diameter = 4.0, double exploration_diameter = 6.0);

/// Grid of representative patches: columns are uniformity bins, rows are
/// invariant angle bins.
std::string patch_map_chart(const PatchMap& map, std::span<const VisualInput> inputs);

}  // namespace smc::svg
