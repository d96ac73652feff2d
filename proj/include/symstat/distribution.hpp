#pragma once

#include "symstat/common.hpp"
#include "symstat/model.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace symstat {

// Exact distribution of the counted-letter occurrences in random words of
// length n, p(k) for k = 0..n, with exact mean and variance.
struct ExactDistribution {
    long n = 0;
    std::vector<double> probabilities;
    double mean = 0.0;
    double variance = 0.0;
};

// Dynamic program over the layer vectors v_{j,k} = [x^k](Ax+B)^j eta with
// per-step renormalization by total mass (the normalizer cancels in the
// probabilities, which are ratios). O(n^2 m^2) time, two rolling layers of
// (n+1) m-vectors; practical up to n around 5000 for m <= 10.
ExactDistribution exact_distribution(const ValidatedModel& model, long n);

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

// Exact mean and variance in O(n m^2) via the coupled recurrences for the
// zeroth, first and second derivative of (A e^z + B)^n eta at z = 0, jointly
// renormalized. Usable for much larger n than the full distribution.
Moments moments(const ValidatedModel& model, long n);

// Characteristic function value  xi'(A e^{it} + B)^n eta / xi'(A+B)^n eta.
Complex characteristic_function(const ValidatedModel& model, long n, double t);

// Draws `count` words of length n with probability proportional to their
// weight, by sequential letter sampling against precomputed suffix masses,
// and returns the histogram of counted-letter occurrences. Deterministic for
// a fixed seed: each word uses its own stream derived from (seed, index).
std::vector<std::uint64_t> sample_counts(const ValidatedModel& model, long n,
                                         long count, std::uint64_t seed);

// CSV with header "k,p", one row per k.
void write_distribution_csv(const ExactDistribution& dist, std::ostream& out);

} // namespace symstat
