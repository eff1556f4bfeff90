#ifndef DD_PLOT_HPP
#define DD_PLOT_HPP

#include <string>

#include "dd/report.hpp"

namespace dd {

// Self-contained SVG documents; no external renderer involved.

// value vs level for every measure in the report, one polyline per measure,
// decade-scaled y axis. Rows with nonpositive or non-finite values are left
// out (they have no place on a log axis).
std::string svg_level_plot(const SweepReport& report, const std::string& title);

// Cell map of one measure over the (phi_B, phi_SB) grid, both axes decade
// scaled. Cells below ratio 1 shade blue, above shade red, and the breakeven
// boundary between them is outlined; degenerate or invalid cells are grey.
std::string svg_map_plot(const SweepReport& report, const std::string& measure,
                         const std::string& title);

}  // namespace dd

#endif
