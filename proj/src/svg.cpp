#include "symstat/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace symstat {

namespace {

std::string num(double v, int digits = 2) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

} // namespace

std::string render_convergence_svg(const ConvergenceReport& report) {
    if (report.entries.empty())
        throw VerifyError("cannot plot an empty report");

    const double width = 640, height = 440;
    const double left = 70, right = 20, top = 20, bottom = 50;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
    for (const auto& e : report.entries) {
        double x = std::log10(static_cast<double>(e.n));
        double y = std::log10(std::max(e.discrepancy, 1e-300));
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
    }
    if (x_max - x_min < 1e-9) { x_min -= 0.5; x_max += 0.5; }
    if (y_max - y_min < 1e-9) { y_min -= 0.5; y_max += 0.5; }
    double x_pad = 0.05 * (x_max - x_min), y_pad = 0.08 * (y_max - y_min);
    x_min -= x_pad; x_max += x_pad;
    y_min -= y_pad; y_max += y_pad;

    auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
    auto py = [&](double y) { return top + (y_max - y) / (y_max - y_min) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(plot_w)
        << "\" height=\"" << num(plot_h)
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // x ticks at the sampled n values
    for (const auto& e : report.entries) {
        double x = px(std::log10(static_cast<double>(e.n)));
        svg << "<path d=\"M " << num(x) << " " << num(top + plot_h) << " V "
            << num(top + plot_h + 6) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << num(x) << "\" y=\"" << num(top + plot_h + 20)
            << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << e.n
            << "</text>\n";
    }
    // y ticks at decades inside the range
    for (int dec = static_cast<int>(std::ceil(y_min)); dec <= static_cast<int>(std::floor(y_max));
         ++dec) {
        double y = py(dec);
        svg << "<path d=\"M " << num(left - 6) << " " << num(y) << " H " << num(left)
            << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << num(left - 10) << "\" y=\"" << num(y + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">1e" << dec
            << "</text>\n";
    }

    // fitted power law across the panel
    {
        double mx = 0, my = 0;
        for (const auto& e : report.entries) {
            mx += std::log10(static_cast<double>(e.n));
            my += std::log10(std::max(e.discrepancy, 1e-300));
        }
        mx /= report.entries.size();
        my /= report.entries.size();
        double y1 = my + report.slope * (x_min + x_pad - mx);
        double y2 = my + report.slope * (x_max - x_pad - mx);
        svg << "<line x1=\"" << num(px(x_min + x_pad)) << "\" y1=\"" << num(py(y1)) << "\" x2=\""
            << num(px(x_max - x_pad)) << "\" y2=\"" << num(py(y2))
            << "\" stroke=\"#c04040\" stroke-width=\"1.5\"/>\n";
    }

    for (const auto& e : report.entries) {
        double x = px(std::log10(static_cast<double>(e.n)));
        double y = py(std::log10(std::max(e.discrepancy, 1e-300)));
        svg << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y)
            << "\" r=\"3.5\" fill=\"#3050a0\"/>\n";
    }

    svg << "<text x=\"" << num(left + 10) << "\" y=\"" << num(top + 16)
        << "\" font-family=\"sans-serif\" font-size=\"13\">slope = " << num(report.slope, 3)
        << " &#177; " << num(report.slope_stderr, 3) << "</text>\n";
    svg << "<text x=\"" << num(left + plot_w / 2) << "\" y=\"" << num(height - 10)
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">n</text>\n";
    svg << "<text x=\"16\" y=\"" << num(top + plot_h / 2)
        << "\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 16 "
        << num(top + plot_h / 2) << ")\" text-anchor=\"middle\">sup discrepancy</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

void write_svg_file(const ConvergenceReport& report, const std::string& path) {
    std::string content = render_convergence_svg(report);
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw VerifyError("cannot write SVG file '" + path + "'");
    out << content;
    if (!out)
        throw VerifyError("failed while writing SVG file '" + path + "'");
}

} // namespace symstat
