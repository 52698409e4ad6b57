// Standalone SVG graphs of maps. Presentational only.
#pragma once

#include "llab/plmap.hpp"

#include <string>
#include <utility>
#include <vector>

namespace llab {

struct PlotOptions {
  std::string title;
  std::vector<std::pair<double, double>> shaded;  // x ranges drawn as bands, e.g. atoms
  std::vector<double> marks;                       // vertical ticks, e.g. cut integers
};

// Graph of f over [lo, hi] with the diagonal, axes and breakpoints.
std::string plot_svg(const PLMap& f, const Dyadic& lo, const Dyadic& hi, const PlotOptions& opt = {});
std::string plot_svg(const PLMap& f, const PlotOptions& opt = {});  // interval maps; line maps use the support hull

}  // namespace llab
