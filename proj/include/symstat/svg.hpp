#pragma once

#include "symstat/verify.hpp"

#include <string>

namespace symstat {

// Self-contained SVG: log-log axes, one <circle> per report entry, a single
// <line> for the fitted power law, and the slope annotation. Byte-identical
// output for identical reports.
std::string render_convergence_svg(const ConvergenceReport& report);

void write_svg_file(const ConvergenceReport& report, const std::string& path);

} // namespace symstat
