#include "symstat/verify.hpp"

#include "symstat/structure.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace symstat {

namespace {

std::string format_window(const LimitLaw& law, const WindowParams& w) {
    std::ostringstream out;
    out.precision(6);
    switch (law.kind) {
    case LawKind::Gaussian:
    case LawKind::TMix:
        out << "|k - a_n| <= " << w.half_width << " s_n";
        break;
    case LawKind::Uniform: {
        double delta = w.endpoint_margin * (law.b2 - law.b1);
        out << "k/n in [" << law.b1 + delta << ", " << law.b2 - delta << "] and outside ["
            << law.b1 - delta << ", " << law.b2 + delta << "]";
        break;
    }
    case LawKind::GaussMix:
        out << "|k - beta_j n| <= " << w.half_width << " sqrt(gamma_j n), j = 1, 2";
        break;
    }
    return out.str();
}

long min_n_for_window(const LimitLaw& law, const WindowParams& w) {
    switch (law.kind) {
    case LawKind::Gaussian:
    case LawKind::TMix: {
        // window width 2 half_width sqrt(gamma n) must reach 1
        double g = law.kind == LawKind::Gaussian ? law.gamma : 0.5 * (law.gamma1 + law.gamma2);
        return static_cast<long>(std::ceil(1.0 / (4.0 * w.half_width * w.half_width * g))) + 1;
    }
    case LawKind::Uniform: {
        double width = (law.b2 - law.b1) * (1.0 - 2.0 * w.endpoint_margin);
        return static_cast<long>(std::ceil(1.0 / width)) + 1;
    }
    case LawKind::GaussMix: {
        double g = std::max(law.gamma1, law.gamma2);
        return static_cast<long>(std::ceil(1.0 / (4.0 * w.half_width * w.half_width * g))) + 1;
    }
    }
    return 1;
}

} // namespace

double discrepancy(const ExactDistribution& dist, const LimitLaw& law,
                   const WindowParams& window) {
    check_law(law);
    const long n = dist.n;
    if (n < 1)
        throw VerifyError("discrepancy needs n >= 1");

    double worst = -1.0;
    switch (law.kind) {
    case LawKind::Gaussian:
    case LawKind::TMix: {
        double a_n = law.centering(static_cast<double>(n));
        double s_n = law.scaling(static_cast<double>(n));
        long k_lo = std::max<long>(0, static_cast<long>(std::ceil(a_n - window.half_width * s_n)));
        long k_hi = std::min<long>(n, static_cast<long>(std::floor(a_n + window.half_width * s_n)));
        for (long k = k_lo; k <= k_hi; ++k) {
            double v = (k - a_n) / s_n;
            worst = std::max(worst, std::abs(s_n * dist.probabilities[k] - law_density(law, v)));
        }
        break;
    }
    case LawKind::Uniform: {
        double delta = window.endpoint_margin * (law.b2 - law.b1);
        double f = 1.0 / (law.b2 - law.b1);
        for (long k = 0; k <= n; ++k) {
            double x = static_cast<double>(k) / n;
            if (x >= law.b1 + delta && x <= law.b2 - delta)
                worst = std::max(worst, std::abs(n * dist.probabilities[k] - f));
            else if (x <= law.b1 - delta || x >= law.b2 + delta)
                worst = std::max(worst, n * dist.probabilities[k]);
        }
        break;
    }
    case LawKind::GaussMix: {
        double sq_n = std::sqrt(static_cast<double>(n));
        double s1 = std::sqrt(law.gamma1 * n), s2 = std::sqrt(law.gamma2 * n);
        bool any = false;
        for (long k = 0; k <= n; ++k) {
            bool in1 = std::abs(k - law.beta1 * n) <= window.half_width * s1;
            bool in2 = std::abs(k - law.beta2 * n) <= window.half_width * s2;
            if (!in1 && !in2)
                continue;
            any = true;
            double local = law_local_value(law, static_cast<double>(k), static_cast<double>(n));
            worst = std::max(worst, sq_n * std::abs(dist.probabilities[k] - local));
        }
        if (!any)
            worst = -1.0;
        break;
    }
    }
    if (worst < 0.0)
        throw VerifyError("window contains no k for n = " + std::to_string(n) +
                          "; minimum usable n is about " +
                          std::to_string(min_n_for_window(law, window)));
    return worst;
}

double discrepancy(const ValidatedModel& model, const LimitLaw& law, long n,
                   const WindowParams& window) {
    if (n < 1)
        throw VerifyError("discrepancy needs n >= 1");
    return discrepancy(exact_distribution(model, n), law, window);
}

namespace {

void fit_slope(ConvergenceReport& report) {
    const size_t k = report.entries.size();
    double sx = 0, sy = 0;
    std::vector<double> xs(k), ys(k);
    for (size_t i = 0; i < k; ++i) {
        xs[i] = std::log(static_cast<double>(report.entries[i].n));
        double d = report.entries[i].discrepancy;
        if (!(d > 0.0) || !std::isfinite(d))
            throw VerifyError("discrepancy is zero or not finite at n = " +
                              std::to_string(report.entries[i].n) +
                              "; the log-log fit is undefined");
        ys[i] = std::log(d);
        sx += xs[i];
        sy += ys[i];
    }
    double mx = sx / k, my = sy / k;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < k; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    report.slope = sxy / sxx;
    double rss = 0;
    for (size_t i = 0; i < k; ++i) {
        double resid = ys[i] - my - report.slope * (xs[i] - mx);
        rss += resid * resid;
    }
    report.slope_stderr = k > 2 ? std::sqrt(rss / (k - 2) / sxx) : 0.0;
}

} // namespace

ConvergenceReport convergence_report(const ValidatedModel& model, const LimitLaw& law,
                                     const std::vector<long>& n_grid,
                                     std::array<double, 2> slope_band) {
    if (n_grid.size() < 3)
        throw VerifyError("need >= 3 grid points for a slope fit");
    for (size_t i = 0; i + 1 < n_grid.size(); ++i)
        if (n_grid[i] >= n_grid[i + 1])
            throw VerifyError("the n grid must be strictly increasing");
    if (n_grid.front() < 1)
        throw VerifyError("grid values must be positive");

    WindowParams window;
    ConvergenceReport report;
    report.law = law;
    report.band = slope_band;
    for (long n : n_grid) {
        ReportEntry e;
        e.n = n;
        e.discrepancy = discrepancy(model, law, n, window);
        e.window = format_window(law, window);
        report.entries.push_back(std::move(e));
    }
    fit_slope(report);
    report.pass = report.slope >= slope_band[0] && report.slope <= slope_band[1];
    for (const auto& e : report.entries)
        report.pass = report.pass && std::isfinite(e.discrepancy);
    return report;
}

ConvergenceReport convergence_report(const ValidatedModel& model,
                                     const std::vector<long>& n_grid,
                                     std::array<double, 2> slope_band) {
    return convergence_report(model, predict_law(classify(model)), n_grid, slope_band);
}

double montecarlo_crosscheck(const ValidatedModel& model, long n, long count,
                             std::uint64_t seed) {
    std::vector<std::uint64_t> hist = sample_counts(model, n, count, seed);
    ExactDistribution dist = exact_distribution(model, n);
    double worst = 0.0;
    for (long k = 0; k <= n; ++k) {
        double empirical = static_cast<double>(hist[k]) / static_cast<double>(count);
        worst = std::max(worst, std::abs(empirical - dist.probabilities[k]));
    }
    return worst;
}

namespace {

nlohmann::ordered_json law_to_json(const LimitLaw& law) {
    nlohmann::ordered_json j;
    j["kind"] = law_kind_name(law.kind);
    switch (law.kind) {
    case LawKind::Gaussian:
        j["beta"] = law.beta;
        j["gamma"] = law.gamma;
        break;
    case LawKind::Uniform:
        j["b1"] = law.b1;
        j["b2"] = law.b2;
        break;
    case LawKind::TMix:
        j["beta"] = law.beta;
        j["gamma1"] = law.gamma1;
        j["gamma2"] = law.gamma2;
        break;
    case LawKind::GaussMix:
        j["p"] = law.p;
        j["beta1"] = law.beta1;
        j["gamma1"] = law.gamma1;
        j["beta2"] = law.beta2;
        j["gamma2"] = law.gamma2;
        break;
    }
    return j;
}

LimitLaw law_from_json(const nlohmann::ordered_json& j) {
    LimitLaw law;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "gaussian") {
        law.kind = LawKind::Gaussian;
        law.beta = j.at("beta").get<double>();
        law.gamma = j.at("gamma").get<double>();
    } else if (kind == "uniform") {
        law.kind = LawKind::Uniform;
        law.b1 = j.at("b1").get<double>();
        law.b2 = j.at("b2").get<double>();
    } else if (kind == "tmix") {
        law.kind = LawKind::TMix;
        law.beta = j.at("beta").get<double>();
        law.gamma1 = j.at("gamma1").get<double>();
        law.gamma2 = j.at("gamma2").get<double>();
        law.gamma = 0.5 * (law.gamma1 + law.gamma2);
    } else if (kind == "gaussmix") {
        law.kind = LawKind::GaussMix;
        law.p = j.at("p").get<double>();
        law.beta1 = j.at("beta1").get<double>();
        law.gamma1 = j.at("gamma1").get<double>();
        law.beta2 = j.at("beta2").get<double>();
        law.gamma2 = j.at("gamma2").get<double>();
    } else {
        throw VerifyError("unknown law kind '" + kind + "' in report");
    }
    return law;
}

} // namespace

std::string report_to_json(const ConvergenceReport& report) {
    nlohmann::ordered_json j;
    j["law"] = law_to_json(report.law);
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const auto& e : report.entries) {
        nlohmann::ordered_json entry;
        entry["n"] = e.n;
        entry["D"] = e.discrepancy;
        entry["window"] = e.window;
        entries.push_back(entry);
    }
    j["entries"] = entries;
    j["slope"] = report.slope;
    j["stderr"] = report.slope_stderr;
    j["band"] = report.band;
    j["pass"] = report.pass;
    return j.dump(2) + "\n";
}

ConvergenceReport report_from_json(const std::string& text) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw VerifyError(std::string("report syntax error: ") + e.what());
    }
    ConvergenceReport report;
    report.law = law_from_json(j.at("law"));
    for (const auto& entry : j.at("entries")) {
        ReportEntry e;
        e.n = entry.at("n").get<long>();
        e.discrepancy = entry.at("D").get<double>();
        e.window = entry.at("window").get<std::string>();
        report.entries.push_back(std::move(e));
    }
    report.slope = j.at("slope").get<double>();
    report.slope_stderr = j.at("stderr").get<double>();
    if (j.contains("band"))
        report.band = {j["band"][0].get<double>(), j["band"][1].get<double>()};
    report.pass = j.at("pass").get<bool>();
    return report;
}

} // namespace symstat
