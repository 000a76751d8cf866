#include "tourcast/svg.hpp"

#include "tourcast/csv.hpp"
#include "tourcast/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>

namespace tourcast::io {

namespace {

constexpr std::array<const char*, 6> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
constexpr double kLeft = 80.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kGap = 50.0;
constexpr double kBottom = 50.0;

std::string num(double v) { return format_fixed(v, 2); }

}  // namespace

std::string xml_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string render_svg(const Figure& figure) {
    const double plot_w = figure.width - kLeft - kRight;
    const double total_h = kTop + static_cast<double>(figure.panels.size()) * (figure.panel_height + kGap) + kBottom;
    std::size_t n_points = figure.x_ticks.size();
    for (const auto& panel : figure.panels) {
        for (const auto& line : panel.lines) n_points = std::max(n_points, line.values.size());
    }

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(figure.width) + "\" height=\"" + num(total_h) +
           "\" viewBox=\"0 0 " + num(figure.width) + " " + num(total_h) + "\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + num(figure.width) + "\" height=\"" + num(total_h) + "\" fill=\"white\"/>\n";
    out += "<text class=\"title\" x=\"" + num(figure.width / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" +
           xml_escape(figure.title) + "</text>\n";

    const auto x_of = [&](std::size_t i) {
        return n_points <= 1 ? kLeft + plot_w / 2
                             : kLeft + plot_w * static_cast<double>(i) / static_cast<double>(n_points - 1);
    };

    for (std::size_t p = 0; p < figure.panels.size(); ++p) {
        const auto& panel = figure.panels[p];
        const double top = kTop + static_cast<double>(p) * (figure.panel_height + kGap);
        const double bottom = top + figure.panel_height;

        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const auto& line : panel.lines) {
            for (double v : line.values) {
                if (!std::isfinite(v)) continue;
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        if (!std::isfinite(lo)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi - lo < 1e-12) {
            lo -= 0.5;
            hi += 0.5;
        }
        const auto y_of = [&](double v) { return bottom - (v - lo) / (hi - lo) * figure.panel_height; };

        out += "<g class=\"panel\">\n";
        out += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(top) + "\" width=\"" + num(plot_w) + "\" height=\"" +
               num(figure.panel_height) + "\" fill=\"none\" stroke=\"#888\"/>\n";
        out += "<text class=\"panel-title\" x=\"" + num(kLeft) + "\" y=\"" + num(top - 6) + "\" font-size=\"13\">" +
               xml_escape(panel.title) + "</text>\n";
        out += "<text class=\"axis-label\" x=\"16\" y=\"" + num((top + bottom) / 2) +
               "\" font-size=\"12\" transform=\"rotate(-90 16 " + num((top + bottom) / 2) + ")\" text-anchor=\"middle\">" +
               xml_escape(panel.y_label) + "</text>\n";
        for (int k = 0; k <= 4; ++k) {
            const double v = lo + (hi - lo) * k / 4.0;
            out += "<text class=\"tick\" x=\"" + num(kLeft - 6) + "\" y=\"" + num(y_of(v) + 4) +
                   "\" font-size=\"10\" text-anchor=\"end\">" + format_fixed(v, 2) + "</text>\n";
        }
        if (lo < 0.0 && hi > 0.0) {
            out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(y_of(0.0)) + "\" x2=\"" + num(kLeft + plot_w) +
                   "\" y2=\"" + num(y_of(0.0)) + "\" stroke=\"#ccc\"/>\n";
        }

        for (std::size_t s = 0; s < panel.lines.size(); ++s) {
            const auto& line = panel.lines[s];
            const std::string color = line.color.empty() ? kPalette[s % kPalette.size()] : line.color;
            std::string points;
            for (std::size_t i = 0; i < line.values.size(); ++i) {
                if (!std::isfinite(line.values[i])) continue;
                if (!points.empty()) points += ' ';
                points += num(x_of(i)) + "," + num(y_of(line.values[i]));
            }
            out += "<polyline class=\"series\" data-name=\"" + xml_escape(line.name) + "\" fill=\"none\" stroke=\"" +
                   color + "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
            const double ly = top + 14 + 16 * static_cast<double>(s);
            out += "<text class=\"legend\" x=\"" + num(kLeft + plot_w + 26) + "\" y=\"" + num(ly + 4) +
                   "\" font-size=\"11\" fill=\"" + color + "\">" + xml_escape(line.name) + "</text>\n";
        }
        out += "</g>\n";
    }

    const double axis_y = kTop + static_cast<double>(figure.panels.size()) * (figure.panel_height + kGap) - kGap;
    if (!figure.x_ticks.empty()) {
        const std::size_t step = std::max<std::size_t>(1, figure.x_ticks.size() / 8);
        for (std::size_t i = 0; i < figure.x_ticks.size(); i += step) {
            out += "<text class=\"tick\" x=\"" + num(x_of(i)) + "\" y=\"" + num(axis_y + 16) +
                   "\" font-size=\"10\" text-anchor=\"middle\">" + xml_escape(figure.x_ticks[i]) + "</text>\n";
        }
    }
    out += "<text class=\"axis-label\" x=\"" + num(kLeft + plot_w / 2) + "\" y=\"" + num(axis_y + 36) +
           "\" font-size=\"12\" text-anchor=\"middle\">" + xml_escape(figure.x_label) + "</text>\n";
    out += "</svg>\n";
    return out;
}

void write_svg(const Figure& figure, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot write " + path.string());
    }
    out << render_svg(figure);
}

}  // namespace tourcast::io
