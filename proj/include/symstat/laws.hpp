#pragma once

#include "symstat/common.hpp"
#include "symstat/structure.hpp"

#include <string>

namespace symstat {

enum class LawKind {
    Gaussian,   // standard normal after centering beta*n, scaling sqrt(gamma*n)
    Uniform,    // density 1/(b2-b1) on [b1,b2] for Y_n/n
    TMix,       // uniform mixture of centered Gaussians, variance in [g1/g, g2/g]
    GaussMix,   // convex combination of two Gaussian local values, weight p
};

// A predicted local limit law: a density (or local value) together with the
// centering and scaling under which s_n Pr(Y_n = k) approaches it.
struct LimitLaw {
    LawKind kind = LawKind::Gaussian;

    double beta = 0.0;    // Gaussian / TMix centering slope
    double gamma = 0.0;   // Gaussian variance slope; TMix: (gamma1+gamma2)/2
    double b1 = 0.0;      // Uniform support
    double b2 = 0.0;
    double gamma1 = 0.0;  // TMix / GaussMix component variance slopes
    double gamma2 = 0.0;
    double p = 0.0;       // GaussMix weight of the first component
    double beta1 = 0.0;   // GaussMix component mean slopes
    double beta2 = 0.0;

    double centering(double n) const;
    double scaling(double n) const;
};

std::string law_kind_name(LawKind kind);
std::string describe_law(const LimitLaw& law);

// Throws LawError when the law's parameter invariants are violated.
void check_law(const LimitLaw& law);

// Selects the local law the classification predicts. Refuses unsupported
// classes and classes whose aperiodicity hypotheses fail, naming the failed
// hypothesis. An equipotent sum class with equal beta and gamma collapses to
// a single Gaussian.
LimitLaw predict_law(const ModelClass& mc);

// Density of the law at x in scaled units (Gaussian, Uniform, TMix).
double law_density(const LimitLaw& law, double x);

// GaussMix evaluation at a point of the k-axis:
//   p phi((k - beta1 n)/sqrt(gamma1 n))/sqrt(gamma1 n) + (1-p) (...)
// Defined for every kind, so callers can treat laws uniformly.
double law_local_value(const LimitLaw& law, double k, double n);

// Closed-form characteristic function of the TMix density, with a series
// branch near t = 0 for the removable singularity.
double t_characteristic(const LimitLaw& law, double t);

} // namespace symstat
