#include "hamflow/cli/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "hamflow/errors.hpp"

namespace hamflow::cli {

namespace {

constexpr double WIDTH = 800.0;
constexpr double HEIGHT = 600.0;
constexpr double MARGIN_L = 70.0;
constexpr double MARGIN_R = 25.0;
constexpr double MARGIN_T = 45.0;
constexpr double MARGIN_B = 55.0;

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void finalize() {
        if (!(lo <= hi)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (lo == hi) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double pad = 0.04 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
};

std::string num_label(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.4g", v);
    return buffer;
}

}  // namespace

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<PlotSeries>& series) {
    Range rx, ry;
    for (const PlotSeries& s : series) {
        for (double v : s.x) rx.include(v);
        for (double v : s.y) ry.include(v);
    }
    rx.finalize();
    ry.finalize();

    auto px = [&](double v) {
        return MARGIN_L + (v - rx.lo) / (rx.hi - rx.lo) * (WIDTH - MARGIN_L - MARGIN_R);
    };
    auto py = [&](double v) {
        return HEIGHT - MARGIN_B - (v - ry.lo) / (ry.hi - ry.lo) * (HEIGHT - MARGIN_T - MARGIN_B);
    };

    std::ofstream out(path);
    if (!out) throw domain_error("cannot write " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
           "viewBox=\"0 0 800 600\">\n";
    out << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
    out << "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-size=\"17\" "
           "font-family=\"sans-serif\">"
        << title << "</text>\n";

    // Axes box and ticks.
    out << "<rect x=\"" << MARGIN_L << "\" y=\"" << MARGIN_T << "\" width=\""
        << WIDTH - MARGIN_L - MARGIN_R << "\" height=\"" << HEIGHT - MARGIN_T - MARGIN_B
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    const int ticks = 5;
    for (int i = 0; i <= ticks; ++i) {
        const double fx = rx.lo + (rx.hi - rx.lo) * i / ticks;
        const double fy = ry.lo + (ry.hi - ry.lo) * i / ticks;
        out << "<line x1=\"" << px(fx) << "\" y1=\"" << HEIGHT - MARGIN_B << "\" x2=\"" << px(fx)
            << "\" y2=\"" << HEIGHT - MARGIN_B + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << px(fx) << "\" y=\"" << HEIGHT - MARGIN_B + 20
            << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">"
            << num_label(fx) << "</text>\n";
        out << "<line x1=\"" << MARGIN_L - 5 << "\" y1=\"" << py(fy) << "\" x2=\"" << MARGIN_L
            << "\" y2=\"" << py(fy) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << MARGIN_L - 8 << "\" y=\"" << py(fy) + 4
            << "\" text-anchor=\"end\" font-size=\"12\" font-family=\"sans-serif\">"
            << num_label(fy) << "</text>\n";
    }
    out << "<text x=\"" << (MARGIN_L + WIDTH - MARGIN_R) / 2 << "\" y=\"" << HEIGHT - 12
        << "\" text-anchor=\"middle\" font-size=\"14\" font-family=\"sans-serif\">" << x_label
        << "</text>\n";
    out << "<text x=\"18\" y=\"" << (MARGIN_T + HEIGHT - MARGIN_B) / 2
        << "\" text-anchor=\"middle\" font-size=\"14\" font-family=\"sans-serif\" "
           "transform=\"rotate(-90 18 "
        << (MARGIN_T + HEIGHT - MARGIN_B) / 2 << ")\">" << y_label << "</text>\n";

    double legend_y = MARGIN_T + 16.0;
    for (const PlotSeries& s : series) {
        if (s.dots) {
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (!std::isfinite(s.y[i])) continue;
                out << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i])
                    << "\" r=\"2\" fill=\"" << s.color << "\"/>\n";
            }
        } else {
            out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" "
                   "points=\"";
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (!std::isfinite(s.y[i])) continue;
                out << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
            }
            out << "\"/>\n";
        }
        if (!s.label.empty()) {
            out << "<circle cx=\"" << WIDTH - MARGIN_R - 150 << "\" cy=\"" << legend_y - 4
                << "\" r=\"4\" fill=\"" << s.color << "\"/>\n";
            out << "<text x=\"" << WIDTH - MARGIN_R - 140 << "\" y=\"" << legend_y
                << "\" font-size=\"12\" font-family=\"sans-serif\">" << s.label << "</text>\n";
            legend_y += 16.0;
        }
    }
    out << "</svg>\n";
}

}  // namespace hamflow::cli
