#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bdbgeo {

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Self-contained SVG line chart (no external assets).  Non-finite samples
/// break the polyline.
void write_svg_chart(std::ostream& os, const std::string& title,
                     const std::string& x_label,
                     const std::vector<SvgSeries>& series,
                     int width = 720, int height = 480);

} // namespace bdbgeo
