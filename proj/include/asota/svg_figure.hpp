#pragma once

#include <string>
#include <utility>
#include <vector>

namespace asota::svg {

enum class Scale { linear, log10 };
enum class Mark { line, points, line_points };

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> xy; // x ascending
    Mark mark = Mark::line;
};

/// Vertical marker with a short label, e.g. an index increment note.
struct Annotation {
    double x = 0.0;
    std::string label;
};

struct Panel {
    std::string y_label;
    Scale y_scale = Scale::linear;
    std::vector<Series> series;
    std::vector<Annotation> annotations;
};

struct Figure {
    std::string title;
    std::string x_label;
    std::vector<Panel> panels; // stacked vertically
};

/// Renders a self-contained deterministic SVG document. Throws
/// NumericError naming the series and x position when a sample is not
/// finite, and DataError for empty/invalid layouts (log panels require
/// positive values).
std::string render(const Figure& figure);

} // namespace asota::svg
