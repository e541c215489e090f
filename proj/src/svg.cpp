#include "bdbgeo/svg.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

namespace bdbgeo {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

} // namespace

void write_svg_chart(std::ostream& os, const std::string& title,
                     const std::string& x_label,
                     const std::vector<SvgSeries>& series, int width, int height) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    }
    if (!(xmax > xmin)) { xmin = 0.0; xmax = 1.0; }
    if (!(ymax > ymin)) { ymin -= 0.5; ymax += 0.5; }
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const int ml = 60, mr = 20, mt = 40, mb = 45;
    const double pw = width - ml - mr, ph = height - mt - mb;
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return mt + (ymax - y) / (ymax - ymin) * ph; };

    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='"
       << height << "' viewBox='0 0 " << width << ' ' << height << "'>\n";
    os << "<rect width='100%' height='100%' fill='white'/>\n";
    os << "<text x='" << width / 2 << "' y='22' text-anchor='middle' font-size='15' "
          "font-family='sans-serif'>" << title << "</text>\n";
    os << "<rect x='" << ml << "' y='" << mt << "' width='" << pw << "' height='" << ph
       << "' fill='none' stroke='#444'/>\n";

    os << std::setprecision(6);
    const int ticks = 5;
    for (int i = 0; i <= ticks; ++i) {
        const double xv = xmin + (xmax - xmin) * i / ticks;
        const double yv = ymin + (ymax - ymin) * i / ticks;
        os << "<line x1='" << px(xv) << "' y1='" << mt + ph << "' x2='" << px(xv)
           << "' y2='" << mt + ph + 4 << "' stroke='#444'/>\n";
        os << "<text x='" << px(xv) << "' y='" << mt + ph + 18
           << "' text-anchor='middle' font-size='11' font-family='sans-serif'>" << xv
           << "</text>\n";
        os << "<line x1='" << ml - 4 << "' y1='" << py(yv) << "' x2='" << ml << "' y2='"
           << py(yv) << "' stroke='#444'/>\n";
        os << "<text x='" << ml - 8 << "' y='" << py(yv) + 4
           << "' text-anchor='end' font-size='11' font-family='sans-serif'>" << yv
           << "</text>\n";
    }
    os << "<text x='" << ml + pw / 2 << "' y='" << height - 8
       << "' text-anchor='middle' font-size='12' font-family='sans-serif'>" << x_label
       << "</text>\n";

    int color = 0;
    int legend_y = mt + 14;
    for (const auto& s : series) {
        const char* c = kPalette[color % 6];
        os << "<polyline fill='none' stroke='" << c << "' stroke-width='1.5' points='";
        bool open = false;
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
                if (open) {
                    os << "'/>\n<polyline fill='none' stroke='" << c
                       << "' stroke-width='1.5' points='";
                    open = false;
                }
                continue;
            }
            os << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
            open = true;
        }
        os << "'/>\n";
        os << "<text x='" << ml + pw - 6 << "' y='" << legend_y
           << "' text-anchor='end' font-size='12' font-family='sans-serif' fill='" << c
           << "'>" << s.label << "</text>\n";
        legend_y += 16;
        ++color;
    }
    os << "</svg>\n";
}

} // namespace bdbgeo
