#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace tourcast::io {

struct LineSeries {
    std::string name;
    std::vector<double> values;
    std::string color;  // empty picks from the default palette
};

struct Panel {
    std::string title;
    std::string y_label;
    std::vector<LineSeries> lines;
};

/// Stacked panels sharing one x axis. Each line becomes exactly one <polyline>.
struct Figure {
    std::string title;
    std::string x_label;
    std::vector<std::string> x_ticks;  // one label per point; a subset is drawn
    std::vector<Panel> panels;
    double width = 900.0;
    double panel_height = 260.0;
};

std::string xml_escape(const std::string& text);

std::string render_svg(const Figure& figure);
void write_svg(const Figure& figure, const std::filesystem::path& path);

}  // namespace tourcast::io
