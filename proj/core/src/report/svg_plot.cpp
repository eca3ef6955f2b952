#include "stancekit/report.hpp"

#include "stancekit/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace stancekit::report {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;
constexpr const char* kColors[2] = {"#1f5fbf", "#c62828"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
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

/// Smallest 1/2/5 x 10^k at or above v.
std::int64_t nice_ceiling(std::int64_t v) {
    if (v <= 1) {
        return 1;
    }
    std::int64_t base = 1;
    while (base * 10 < v) {
        base *= 10;
    }
    for (std::int64_t m : {1, 2, 5, 10}) {
        if (base * m >= v) {
            return base * m;
        }
    }
    return base * 10;
}

} // namespace

std::string render_timeseries_svg(const DailySeries& series) {
    if (series.rows.empty()) {
        throw DataError("timeseries plot: empty series");
    }
    const auto days = series.end.value - series.start.value + 1;
    std::int64_t max_count = 0;
    for (const auto& r : series.rows) {
        max_count = std::max(max_count, r.count);
    }
    const std::int64_t y_max = nice_ceiling(max_count);
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto x_of = [&](std::int64_t day_offset) {
        return days > 1 ? kLeft + plot_w * static_cast<double>(day_offset) / static_cast<double>(days - 1)
                        : kLeft + plot_w / 2.0;
    };
    auto y_of = [&](std::int64_t count) {
        return kTop + plot_h * (1.0 - static_cast<double>(count) / static_cast<double>(y_max));
    };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
        << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight) << "\" font-family=\"sans-serif\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"24.00\" text-anchor=\"middle\" font-size=\"16\">"
        << "Daily tweets per camp</text>\n";

    // Axes.
    svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop + plot_h) << "\" x2=\"" << num(kLeft + plot_w)
        << "\" y2=\"" << num(kTop + plot_h) << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(kLeft) << "\" y2=\""
        << num(kTop + plot_h) << "\" stroke=\"black\"/>\n";

    for (int t = 0; t <= 4; ++t) {
        const std::int64_t value = y_max * t / 4;
        const double y = y_of(value);
        svg << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kLeft) << "\" y2=\""
            << num(y) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\" font-size=\"11\">"
            << value << "</text>\n";
    }
    const std::int64_t x_ticks = std::min<std::int64_t>(days, 5);
    for (std::int64_t t = 0; t < x_ticks; ++t) {
        const std::int64_t offset = x_ticks > 1 ? (days - 1) * t / (x_ticks - 1) : 0;
        const double x = x_of(offset);
        svg << "<line x1=\"" << num(x) << "\" y1=\"" << num(kTop + plot_h) << "\" x2=\"" << num(x) << "\" y2=\""
            << num(kTop + plot_h + 5) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << num(x) << "\" y=\"" << num(kTop + plot_h + 20)
            << "\" text-anchor=\"middle\" font-size=\"11\">" << format_day(Day{series.start.value + offset})
            << "</text>\n";
    }
    svg << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(kHeight - 15)
        << "\" text-anchor=\"middle\" font-size=\"13\">Date (UTC)</text>\n";
    svg << "<text x=\"18.00\" y=\"" << num(kTop + plot_h / 2) << "\" text-anchor=\"middle\" font-size=\"13\" "
        << "transform=\"rotate(-90 18.00 " << num(kTop + plot_h / 2) << ")\">Tweets per day</text>\n";

    for (int c = 0; c < 2; ++c) {
        svg << "<polyline fill=\"none\" stroke=\"" << kColors[c] << "\" stroke-width=\"2\" points=\"";
        bool first = true;
        for (const auto& r : series.rows) {
            if (r.camp != c) {
                continue;
            }
            svg << (first ? "" : " ") << num(x_of(r.day.value - series.start.value)) << ',' << num(y_of(r.count));
            first = false;
        }
        svg << "\"/>\n";
        const double ly = kTop + 20.0 * c + 10.0;
        const double lx = kLeft + plot_w + 15.0;
        svg << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 20) << "\" y2=\"" << num(ly)
            << "\" stroke=\"" << kColors[c] << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << num(lx + 26) << "\" y=\"" << num(ly + 4) << "\" font-size=\"12\">"
            << xml_escape(series.camps[static_cast<std::size_t>(c)]) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void emit_timeseries_plot(const DailySeries& series, const std::string& path) {
    const auto svg = render_timeseries_svg(series);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write plot '" + path + "'");
    }
    out << svg;
    if (!out) {
        throw IoError("write failed for plot '" + path + "'");
    }
}

} // namespace stancekit::report
