#include "asota/svg_figure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "asota/errors.hpp"

namespace asota::svg {

namespace {

constexpr double kWidth = 960.0;
constexpr double kPanelHeight = 320.0;
constexpr double kMarginLeft = 86.0;
constexpr double kMarginRight = 28.0;
constexpr double kMarginTop = 46.0;
constexpr double kMarginBottom = 56.0;
constexpr double kPanelGap = 26.0;

const char* kPalette[] = {"#1f6fb4", "#d2552c", "#3d9443", "#8358a8",
                          "#b8962e", "#4aa3a8", "#94302e", "#5b5b5b"};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = 0.0, hi = 1.0;
};

// Nice tick positions for a linear axis: 1-2-5 ladder, at most ~7 ticks.
std::vector<double> linear_ticks(const Range& r) {
    const double span = r.hi - r.lo;
    if (span <= 0.0) return {r.lo};
    double step = std::pow(10.0, std::floor(std::log10(span / 5.0)));
    for (double mult : {1.0, 2.0, 5.0, 10.0, 20.0}) {
        if (span / (step * mult) <= 7.0) {
            step *= mult;
            break;
        }
    }
    std::vector<double> ticks;
    double t = std::ceil(r.lo / step - 1e-9) * step;
    for (; t <= r.hi + 1e-9 * span; t += step) ticks.push_back(t == 0.0 ? 0.0 : t);
    return ticks;
}

std::string tick_label(double v) {
    char buf[40];
    const double a = std::fabs(v);
    if (v != 0.0 && (a >= 1e6 || a < 1e-3)) {
        std::snprintf(buf, sizeof(buf), "%.1e", v);
    } else {
        std::snprintf(buf, sizeof(buf), "%g", v);
    }
    return buf;
}

std::string log_tick_label(int decade) {
    char buf[32];
    if (decade >= -3 && decade <= 6) {
        std::snprintf(buf, sizeof(buf), "%g", std::pow(10.0, decade));
    } else {
        std::snprintf(buf, sizeof(buf), "1e%d", decade);
    }
    return buf;
}

} // namespace

std::string render(const Figure& figure) {
    if (figure.panels.empty()) throw DataError("figure has no panels");
    for (const auto& panel : figure.panels) {
        if (panel.series.empty()) throw DataError("figure panel has no series");
        for (const auto& s : panel.series) {
            if (s.xy.empty()) throw DataError("series '" + s.label + "' is empty");
            for (const auto& [x, y] : s.xy) {
                if (!std::isfinite(x) || !std::isfinite(y)) {
                    throw NumericError("series '" + s.label + "' has a non-finite sample at x=" +
                                       std::to_string(x));
                }
                if (panel.y_scale == Scale::log10 && y <= 0.0) {
                    throw DataError("series '" + s.label +
                                    "' has a non-positive value on a log panel at x=" +
                                    std::to_string(x));
                }
            }
        }
    }

    const double height =
        kMarginTop + kMarginBottom +
        static_cast<double>(figure.panels.size()) * kPanelHeight +
        static_cast<double>(figure.panels.size() - 1) * kPanelGap;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\""
        << num(height) << "\" viewBox=\"0 0 " << num(kWidth) << " " << num(height) << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << num(kWidth / 2) << "\" y=\"26\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"17\">" << escape(figure.title) << "</text>\n";

    // Shared x range across panels.
    Range xr{1e300, -1e300};
    for (const auto& panel : figure.panels) {
        for (const auto& s : panel.series) {
            for (const auto& [x, _] : s.xy) {
                xr.lo = std::min(xr.lo, x);
                xr.hi = std::max(xr.hi, x);
            }
        }
    }
    if (xr.hi <= xr.lo) xr.hi = xr.lo + 1.0;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    auto x_px = [&](double x) {
        return kMarginLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w;
    };

    for (std::size_t pi = 0; pi < figure.panels.size(); ++pi) {
        const Panel& panel = figure.panels[pi];
        const double top = kMarginTop + static_cast<double>(pi) * (kPanelHeight + kPanelGap);
        const double bottom = top + kPanelHeight;

        Range yr{1e300, -1e300};
        for (const auto& s : panel.series) {
            for (const auto& [_, y] : s.xy) {
                const double t = panel.y_scale == Scale::log10 ? std::log10(y) : y;
                yr.lo = std::min(yr.lo, t);
                yr.hi = std::max(yr.hi, t);
            }
        }
        if (yr.hi <= yr.lo) {
            yr.lo -= 1.0;
            yr.hi += 1.0;
        } else {
            const double pad = 0.05 * (yr.hi - yr.lo);
            yr.lo -= pad;
            yr.hi += pad;
        }
        auto y_px = [&](double y) {
            const double t = panel.y_scale == Scale::log10 ? std::log10(y) : y;
            return bottom - (t - yr.lo) / (yr.hi - yr.lo) * kPanelHeight;
        };

        out << "<rect x=\"" << num(kMarginLeft) << "\" y=\"" << num(top) << "\" width=\""
            << num(plot_w) << "\" height=\"" << num(kPanelHeight)
            << "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";

        // y ticks + grid
        if (panel.y_scale == Scale::log10) {
            const int d0 = static_cast<int>(std::ceil(yr.lo - 1e-9));
            const int d1 = static_cast<int>(std::floor(yr.hi + 1e-9));
            for (int d = d0; d <= d1; ++d) {
                const double py = bottom - (d - yr.lo) / (yr.hi - yr.lo) * kPanelHeight;
                out << "<line class=\"ytick\" x1=\"" << num(kMarginLeft) << "\" y1=\"" << num(py)
                    << "\" x2=\"" << num(kWidth - kMarginRight) << "\" y2=\"" << num(py)
                    << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
                out << "<text x=\"" << num(kMarginLeft - 8) << "\" y=\"" << num(py + 4)
                    << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
                    << log_tick_label(d) << "</text>\n";
            }
        } else {
            for (double t : linear_ticks(yr)) {
                const double py = bottom - (t - yr.lo) / (yr.hi - yr.lo) * kPanelHeight;
                out << "<line class=\"ytick\" x1=\"" << num(kMarginLeft) << "\" y1=\"" << num(py)
                    << "\" x2=\"" << num(kWidth - kMarginRight) << "\" y2=\"" << num(py)
                    << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
                out << "<text x=\"" << num(kMarginLeft - 8) << "\" y=\"" << num(py + 4)
                    << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
                    << tick_label(t) << "</text>\n";
            }
        }
        out << "<text transform=\"translate(18," << num((top + bottom) / 2)
            << ") rotate(-90)\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"12\">"
            << escape(panel.y_label) << "</text>\n";

        // x ticks on the bottom panel only
        if (pi + 1 == figure.panels.size()) {
            for (double t : linear_ticks(xr)) {
                const double px = x_px(t);
                out << "<line x1=\"" << num(px) << "\" y1=\"" << num(bottom) << "\" x2=\""
                    << num(px) << "\" y2=\"" << num(bottom + 5)
                    << "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
                out << "<text x=\"" << num(px) << "\" y=\"" << num(bottom + 18)
                    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
                    << tick_label(t) << "</text>\n";
            }
            out << "<text x=\"" << num(kMarginLeft + plot_w / 2) << "\" y=\""
                << num(bottom + 38) << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                << "font-size=\"12\">" << escape(figure.x_label) << "</text>\n";
        }

        for (const auto& ann : panel.annotations) {
            const double px = x_px(ann.x);
            out << "<line class=\"annotation\" x1=\"" << num(px) << "\" y1=\"" << num(top)
                << "\" x2=\"" << num(px) << "\" y2=\"" << num(bottom)
                << "\" stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
            out << "<text x=\"" << num(px + 3) << "\" y=\"" << num(top + 13)
                << "\" font-family=\"sans-serif\" font-size=\"10\" fill=\"#555555\">"
                << escape(ann.label) << "</text>\n";
        }

        for (std::size_t si = 0; si < panel.series.size(); ++si) {
            const Series& s = panel.series[si];
            const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
            if (s.mark != Mark::points) {
                out << "<polyline fill=\"none\" stroke=\"" << color
                    << "\" stroke-width=\"1.6\" points=\"";
                for (const auto& [x, y] : s.xy) out << num(x_px(x)) << "," << num(y_px(y)) << " ";
                out << "\"/>\n";
            }
            if (s.mark != Mark::line) {
                for (const auto& [x, y] : s.xy) {
                    out << "<circle cx=\"" << num(x_px(x)) << "\" cy=\"" << num(y_px(y))
                        << "\" r=\"2.6\" fill=\"" << color << "\"/>\n";
                }
            }
            // legend entry
            const double ly = top + 16 + 16 * static_cast<double>(si);
            out << "<line x1=\"" << num(kMarginLeft + 10) << "\" y1=\"" << num(ly) << "\" x2=\""
                << num(kMarginLeft + 34) << "\" y2=\"" << num(ly) << "\" stroke=\"" << color
                << "\" stroke-width=\"2\"/>\n";
            out << "<text x=\"" << num(kMarginLeft + 40) << "\" y=\"" << num(ly + 4)
                << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(s.label)
                << "</text>\n";
        }
    }

    out << "</svg>\n";
    return out.str();
}

} // namespace asota::svg
