#ifndef SVPORT_PLOT_HPP
#define SVPORT_PLOT_HPP

#include <string>
#include <utility>
#include <vector>

namespace svport {

struct PlotSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;
    bool dashed = false;
};

struct Chart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<PlotSeries> series;
    // Optional explicit x tick positions with labels (used for date axes);
    // empty means numeric ticks are derived from the data range.
    std::vector<std::pair<double, std::string>> x_ticks;
};

// Renders the charts side by side into one standalone SVG document. Output
// is a pure function of the inputs.
std::string render_charts(const std::vector<Chart>& charts);

}  // namespace svport

#endif
