#include "symstat/laws.hpp"

#include "symstat/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace symstat {

namespace {

const double kSqrt2Pi = std::sqrt(2.0 * std::numbers::pi);

double std_normal(double x) { return std::exp(-0.5 * x * x) / kSqrt2Pi; }

} // namespace

double LimitLaw::centering(double n) const {
    switch (kind) {
    case LawKind::Gaussian:
    case LawKind::TMix: return beta * n;
    case LawKind::Uniform:
    case LawKind::GaussMix: return 0.0;
    }
    return 0.0;
}

double LimitLaw::scaling(double n) const {
    switch (kind) {
    case LawKind::Gaussian:
    case LawKind::TMix: return std::sqrt(gamma * n);
    case LawKind::Uniform: return n;
    case LawKind::GaussMix: return std::sqrt(n);
    }
    return 1.0;
}

std::string law_kind_name(LawKind kind) {
    switch (kind) {
    case LawKind::Gaussian: return "gaussian";
    case LawKind::Uniform: return "uniform";
    case LawKind::TMix: return "tmix";
    case LawKind::GaussMix: return "gaussmix";
    }
    return "gaussian";
}

std::string describe_law(const LimitLaw& law) {
    std::ostringstream out;
    out.precision(12);
    switch (law.kind) {
    case LawKind::Gaussian:
        out << "gaussian local law: sqrt(gamma n) Pr(Y_n = k) ~ phi((k - beta n)/sqrt(gamma n)), "
            << "beta = " << law.beta << ", gamma = " << law.gamma;
        break;
    case LawKind::Uniform:
        out << "uniform local law: n Pr(Y_n = k) ~ f_U(k/n) on [" << law.b1 << ", " << law.b2
            << "]";
        break;
    case LawKind::TMix:
        out << "variance-mixture local law: sqrt(gamma n) Pr(Y_n = k) ~ f_T((k - beta n)/"
            << "sqrt(gamma n)), beta = " << law.beta << ", gamma1 = " << law.gamma1
            << ", gamma2 = " << law.gamma2;
        break;
    case LawKind::GaussMix:
        out << "two-gaussian mixture local law, weight p = " << law.p << ", beta1 = " << law.beta1
            << ", gamma1 = " << law.gamma1 << ", beta2 = " << law.beta2
            << ", gamma2 = " << law.gamma2;
        break;
    }
    return out.str();
}

void check_law(const LimitLaw& law) {
    switch (law.kind) {
    case LawKind::Gaussian:
        if (!(law.gamma > 0.0) || !std::isfinite(law.beta))
            throw LawError("gaussian law requires finite beta and gamma > 0");
        break;
    case LawKind::Uniform:
        if (!(law.b1 < law.b2) || !(law.b1 > 0.0) || !(law.b2 < 1.0))
            throw LawError("uniform law requires 0 < b1 < b2 < 1");
        break;
    case LawKind::TMix:
        if (!(law.gamma1 > 0.0) || !(law.gamma2 > 0.0) || law.gamma1 == law.gamma2)
            throw LawError("mixture law requires positive, distinct gamma1, gamma2");
        break;
    case LawKind::GaussMix:
        if (!(law.p > 0.0) || !(law.p < 1.0) || !(law.gamma1 > 0.0) || !(law.gamma2 > 0.0))
            throw LawError("gaussian combination requires p in (0,1) and positive gammas");
        break;
    }
}

LimitLaw predict_law(const ModelClass& mc) {
    if (mc.is_unsupported())
        throw LawError("no law for an unsupported class: " + mc.unsupported_reason);

    LimitLaw law;
    switch (mc.variant) {
    case Variant::Primitive: {
        if (mc.aperiodicity[0].d != 1)
            throw LawError("gaussian local law refused: the pair (A, B) is not aperiodic "
                           "(d = " + std::to_string(mc.aperiodicity[0].d) + ")");
        law.kind = LawKind::Gaussian;
        law.beta = mc.constants[0].beta;
        law.gamma = mc.constants[0].gamma;
        break;
    }
    case Variant::DominantCommunicating:
    case Variant::DominantSum: {
        const SpectralConstants& dom = mc.constants[mc.dominant - 1];
        law.kind = LawKind::Gaussian;
        law.beta = dom.beta;
        law.gamma = dom.gamma;
        break;
    }
    case Variant::EquipotentCommunicating: {
        const SpectralConstants& c1 = mc.constants[0];
        const SpectralConstants& c2 = mc.constants[1];
        switch (mc.subcase) {
        case EquipotentSubcase::BetaDiffer:
            law.kind = LawKind::Uniform;
            law.b1 = std::min(c1.beta, c2.beta);
            law.b2 = std::max(c1.beta, c2.beta);
            break;
        case EquipotentSubcase::BetaEqualGammaDiffer:
            law.kind = LawKind::TMix;
            law.beta = 0.5 * (c1.beta + c2.beta);
            law.gamma1 = c1.gamma;
            law.gamma2 = c2.gamma;
            law.gamma = 0.5 * (c1.gamma + c2.gamma);
            break;
        case EquipotentSubcase::BetaGammaEqual:
            law.kind = LawKind::Gaussian;
            law.beta = 0.5 * (c1.beta + c2.beta);
            law.gamma = 0.5 * (c1.gamma + c2.gamma);
            break;
        }
        break;
    }
    case Variant::EquipotentSum: {
        const SpectralConstants& c1 = mc.constants[0];
        const SpectralConstants& c2 = mc.constants[1];
        if (mc.subcase == EquipotentSubcase::BetaGammaEqual) {
            law.kind = LawKind::Gaussian;
            law.beta = 0.5 * (c1.beta + c2.beta);
            law.gamma = 0.5 * (c1.gamma + c2.gamma);
        } else {
            law.kind = LawKind::GaussMix;
            law.p = c1.alpha / (c1.alpha + c2.alpha);
            law.beta1 = c1.beta;
            law.gamma1 = c1.gamma;
            law.beta2 = c2.beta;
            law.gamma2 = c2.gamma;
        }
        break;
    }
    case Variant::Unsupported:
        break;  // handled above
    }
    check_law(law);
    return law;
}

double law_density(const LimitLaw& law, double x) {
    if (!std::isfinite(x))
        throw LawError("density evaluated at a non-finite point");
    switch (law.kind) {
    case LawKind::Gaussian:
        return std_normal(x);
    case LawKind::Uniform:
        return (x >= law.b1 && x <= law.b2) ? 1.0 / (law.b2 - law.b1) : 0.0;
    case LawKind::TMix: {
        double g = 0.5 * (law.gamma1 + law.gamma2);
        double lo = std::min(law.gamma1, law.gamma2) / g;
        double hi = std::max(law.gamma1, law.gamma2) / g;
        double val = integrate(
            [x](double s) { return std::exp(-0.5 * x * x / s) / std::sqrt(2.0 * std::numbers::pi * s); },
            lo, hi, 1e-10);
        return val / (hi - lo);
    }
    case LawKind::GaussMix:
        throw LawError("the gaussian combination is evaluated per (k, n); "
                       "use law_local_value");
    }
    return 0.0;
}

double law_local_value(const LimitLaw& law, double k, double n) {
    switch (law.kind) {
    case LawKind::Gaussian: {
        double s = std::sqrt(law.gamma * n);
        return std_normal((k - law.beta * n) / s) / s;
    }
    case LawKind::Uniform:
        return law_density(law, k / n) / n;
    case LawKind::TMix: {
        double s = std::sqrt(law.gamma * n);
        return law_density(law, (k - law.beta * n) / s) / s;
    }
    case LawKind::GaussMix: {
        double s1 = std::sqrt(law.gamma1 * n);
        double s2 = std::sqrt(law.gamma2 * n);
        return law.p * std_normal((k - law.beta1 * n) / s1) / s1 +
               (1.0 - law.p) * std_normal((k - law.beta2 * n) / s2) / s2;
    }
    }
    return 0.0;
}

double t_characteristic(const LimitLaw& law, double t) {
    if (law.kind != LawKind::TMix)
        throw LawError("t_characteristic is defined for the variance-mixture law only");
    double g = 0.5 * (law.gamma1 + law.gamma2);
    double a = law.gamma1 / (2.0 * g);
    double b = law.gamma2 / (2.0 * g);
    if (std::abs(t) < 1e-4) {
        // a + b = 1; the series keeps full precision through the singularity.
        double t2 = t * t;
        return 1.0 - 0.5 * t2 + (a * a + a * b + b * b) * t2 * t2 / 6.0;
    }
    // (e^{-a t^2} - e^{-b t^2}) / ((b - a) t^2), written via expm1 so the
    // difference of near-equal exponentials keeps full relative precision.
    double w = (b - a) * t * t;
    return std::exp(-a * t * t) * (-std::expm1(-w)) / w;
}

} // namespace symstat
