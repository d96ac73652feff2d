#pragma once

#include "symstat/common.hpp"
#include "symstat/distribution.hpp"
#include "symstat/laws.hpp"
#include "symstat/model.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace symstat {

// Windows over which the sup-discrepancy is taken. Gaussian-type laws use
// |k - a_n| <= half_width s_n; the uniform law excludes a fixed neighbourhood
// of each density endpoint, of width endpoint_margin (b2 - b1), and also
// checks the zero-density region outside.
struct WindowParams {
    double half_width = 3.0;
    double endpoint_margin = 0.1;
};

struct ReportEntry {
    long n = 0;
    double discrepancy = 0.0;
    std::string window;
};

struct ConvergenceReport {
    LimitLaw law;
    std::vector<ReportEntry> entries;
    double slope = 0.0;
    double slope_stderr = 0.0;
    std::array<double, 2> band{-0.75, -0.25};
    bool pass = false;
};

// Sup over the admissible window of |s_n p_n(k) - f((k - a_n)/s_n)|; for the
// two-gaussian combination, of sqrt(n) |p_n(k) - local value|.
double discrepancy(const ValidatedModel& model, const LimitLaw& law, long n,
                   const WindowParams& window = {});

// Pre-computed distribution variant, for callers that reuse the exact DP.
double discrepancy(const ExactDistribution& dist, const LimitLaw& law,
                   const WindowParams& window = {});

// Runs discrepancy over the grid addressed by the model's own predicted law
// and fits the log-log slope by ordinary least squares.
ConvergenceReport convergence_report(const ValidatedModel& model,
                                     const std::vector<long>& n_grid,
                                     std::array<double, 2> slope_band = {-0.75, -0.25});

// Same, with the law supplied by the caller.
ConvergenceReport convergence_report(const ValidatedModel& model, const LimitLaw& law,
                                     const std::vector<long>& n_grid,
                                     std::array<double, 2> slope_band = {-0.75, -0.25});

// Sup over k of |empirical frequency - exact probability| for `count` words
// sampled with the given seed. Sampling noise is of order 1/(2 sqrt(count)).
double montecarlo_crosscheck(const ValidatedModel& model, long n, long count,
                             std::uint64_t seed);

std::string report_to_json(const ConvergenceReport& report);
ConvergenceReport report_from_json(const std::string& text);

} // namespace symstat
