#include "svport/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "svport/error.hpp"

namespace svport {

namespace {

constexpr double kChartWidth = 460.0;
constexpr double kChartHeight = 360.0;
constexpr double kMarginLeft = 62.0;
constexpr double kMarginRight = 16.0;
constexpr double kMarginTop = 34.0;
constexpr double kMarginBottom = 46.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#7f7f7f"};

std::string px(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", value);
    return buf;
}

std::string tick_label(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", value);
    return buf;
}

std::string escape_text(const std::string& text) {
    std::string out;
    for (char ch : text) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += ch;
        }
    }
    return out;
}

struct Range {
    double lo = 0.0;
    double hi = 1.0;
};

Range padded_range(double lo, double hi) {
    if (lo > hi) std::swap(lo, hi);
    double span = hi - lo;
    if (span == 0.0) span = std::max(1.0, std::abs(lo) * 0.1);
    return {lo - 0.05 * span, hi + 0.05 * span};
}

void append_chart(std::string& svg, double x0, const Chart& chart) {
    double data_x_lo = 0.0, data_x_hi = 1.0, data_y_lo = 0.0, data_y_hi = 1.0;
    bool any = false;
    for (const PlotSeries& s : chart.series) {
        for (const auto& [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) {
                throw Error(ErrorCode::Validation, "non-finite point in series " + s.name);
            }
            if (!any) {
                data_x_lo = data_x_hi = x;
                data_y_lo = data_y_hi = y;
                any = true;
            } else {
                data_x_lo = std::min(data_x_lo, x);
                data_x_hi = std::max(data_x_hi, x);
                data_y_lo = std::min(data_y_lo, y);
                data_y_hi = std::max(data_y_hi, y);
            }
        }
    }
    const Range xr = padded_range(data_x_lo, data_x_hi);
    const Range yr = padded_range(data_y_lo, data_y_hi);

    const double plot_x = x0 + kMarginLeft;
    const double plot_y = kMarginTop;
    const double plot_w = kChartWidth - kMarginLeft - kMarginRight;
    const double plot_h = kChartHeight - kMarginTop - kMarginBottom;

    auto to_px_x = [&](double x) { return plot_x + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
    auto to_px_y = [&](double y) { return plot_y + plot_h - (y - yr.lo) / (yr.hi - yr.lo) * plot_h; };

    svg += "<rect x=\"" + px(plot_x) + "\" y=\"" + px(plot_y) + "\" width=\"" + px(plot_w) +
           "\" height=\"" + px(plot_h) + "\" fill=\"none\" stroke=\"#444444\"/>\n";
    svg += "<text x=\"" + px(x0 + kChartWidth / 2) + "\" y=\"20\" text-anchor=\"middle\" "
           "font-weight=\"bold\">" + escape_text(chart.title) + "</text>\n";
    svg += "<text x=\"" + px(plot_x + plot_w / 2) + "\" y=\"" + px(kChartHeight - 10) +
           "\" text-anchor=\"middle\">" + escape_text(chart.x_label) + "</text>\n";
    svg += "<text x=\"" + px(x0 + 14) + "\" y=\"" + px(plot_y + plot_h / 2) +
           "\" text-anchor=\"middle\" transform=\"rotate(-90 " + px(x0 + 14) + " " +
           px(plot_y + plot_h / 2) + ")\">" + escape_text(chart.y_label) + "</text>\n";

    std::vector<std::pair<double, std::string>> x_ticks = chart.x_ticks;
    if (x_ticks.empty() && any) {
        for (double f : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const double v = data_x_lo + f * (data_x_hi - data_x_lo);
            x_ticks.emplace_back(v, tick_label(v));
        }
    }
    for (const auto& [value, label] : x_ticks) {
        const double tx = to_px_x(value);
        svg += "<line x1=\"" + px(tx) + "\" y1=\"" + px(plot_y + plot_h) + "\" x2=\"" + px(tx) +
               "\" y2=\"" + px(plot_y + plot_h + 4) + "\" stroke=\"#444444\"/>\n";
        svg += "<text x=\"" + px(tx) + "\" y=\"" + px(plot_y + plot_h + 17) +
               "\" text-anchor=\"middle\">" + escape_text(label) + "</text>\n";
    }
    if (any) {
        for (double f : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const double v = data_y_lo + f * (data_y_hi - data_y_lo);
            const double ty = to_px_y(v);
            svg += "<line x1=\"" + px(plot_x - 4) + "\" y1=\"" + px(ty) + "\" x2=\"" + px(plot_x) +
                   "\" y2=\"" + px(ty) + "\" stroke=\"#444444\"/>\n";
            svg += "<text x=\"" + px(plot_x - 7) + "\" y=\"" + px(ty + 3.5) +
                   "\" text-anchor=\"end\">" + tick_label(v) + "</text>\n";
        }
    }

    for (std::size_t k = 0; k < chart.series.size(); ++k) {
        const PlotSeries& s = chart.series[k];
        if (s.points.empty()) continue;
        const char* color = kPalette[k % (sizeof(kPalette) / sizeof(kPalette[0]))];
        svg += "<polyline fill=\"none\" stroke=\"";
        svg += color;
        svg += "\" stroke-width=\"1.5\"";
        if (s.dashed) svg += " stroke-dasharray=\"6 4\"";
        svg += " points=\"";
        for (std::size_t p = 0; p < s.points.size(); ++p) {
            if (p != 0) svg += ' ';
            svg += px(to_px_x(s.points[p].first)) + ',' + px(to_px_y(s.points[p].second));
        }
        svg += "\"/>\n";

        const double ly = plot_y + 14.0 + 14.0 * static_cast<double>(k);
        const double lx = plot_x + plot_w - 120.0;
        svg += "<line x1=\"" + px(lx) + "\" y1=\"" + px(ly - 4) + "\" x2=\"" + px(lx + 22) +
               "\" y2=\"" + px(ly - 4) + "\" stroke=\"";
        svg += color;
        svg += "\" stroke-width=\"1.5\"";
        if (s.dashed) svg += " stroke-dasharray=\"6 4\"";
        svg += "/>\n";
        svg += "<text x=\"" + px(lx + 27) + "\" y=\"" + px(ly) + "\">" + escape_text(s.name) +
               "</text>\n";
    }
}

}  // namespace

std::string render_charts(const std::vector<Chart>& charts) {
    if (charts.empty()) {
        throw Error(ErrorCode::Validation, "at least one chart is required");
    }
    const double width = kChartWidth * static_cast<double>(charts.size());

    std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(width) + "\" height=\"" +
           px(kChartHeight) + "\" viewBox=\"0 0 " + px(width) + " " + px(kChartHeight) +
           "\" font-family=\"monospace\" font-size=\"11\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + px(width) + "\" height=\"" + px(kChartHeight) +
           "\" fill=\"#ffffff\"/>\n";
    for (std::size_t k = 0; k < charts.size(); ++k) {
        append_chart(svg, kChartWidth * static_cast<double>(k), charts[k]);
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace svport
