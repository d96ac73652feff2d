#include "symstat/cli.hpp"

#include "symstat/distribution.hpp"
#include "symstat/laws.hpp"
#include "symstat/model.hpp"
#include "symstat/structure.hpp"
#include "symstat/svg.hpp"
#include "symstat/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace symstat {

namespace {

// 12 significant digits, annotated with a small rational when one matches to
// 1e-9 (the worked models all have rational constants).
std::string format_constant(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    std::string s = buf;
    if (std::abs(v - std::round(v)) <= 1e-9)
        return s;  // integer; the decimal already says so
    for (long q = 2; q <= 64; ++q) {
        long p = std::llround(v * q);
        if (std::abs(v - static_cast<double>(p) / q) <= 1e-9 && std::gcd(p, q) == 1) {
            s += " (\u2248 " + std::to_string(p) + "/" + std::to_string(q) + ")";
            break;
        }
    }
    return s;
}

std::string format_states(const std::vector<int>& comp) {
    std::string s;
    for (size_t i = 0; i < comp.size(); ++i) {
        if (i)
            s += ",";
        s += std::to_string(comp[i] + 1);
    }
    return s;
}

std::string law_line(const LimitLaw& law) {
    switch (law.kind) {
    case LawKind::Gaussian:
        return "gaussian: sqrt(gamma n) Pr(Y_n = k) ~ phi((k - beta n)/sqrt(gamma n)), beta = " +
               format_constant(law.beta) + ", gamma = " + format_constant(law.gamma);
    case LawKind::Uniform:
        return "uniform for Y_n/n on [" + format_constant(law.b1) + ", " +
               format_constant(law.b2) + "]";
    case LawKind::TMix:
        return "variance mixture: sqrt(gamma n) Pr(Y_n = k) ~ f_T((k - beta n)/sqrt(gamma n)), "
               "beta = " + format_constant(law.beta) + ", gamma1 = " +
               format_constant(law.gamma1) + ", gamma2 = " + format_constant(law.gamma2);
    case LawKind::GaussMix:
        return "two-gaussian combination: p = " + format_constant(law.p) + ", beta1 = " +
               format_constant(law.beta1) + ", gamma1 = " + format_constant(law.gamma1) +
               ", beta2 = " + format_constant(law.beta2) + ", gamma2 = " +
               format_constant(law.gamma2);
    }
    return "";
}

void print_components(std::ostream& out, const ValidatedModel& model) {
    ComponentStructure cs = condensation(model);
    for (size_t j = 0; j < cs.components.size(); ++j) {
        Matrix block = cs.a_blocks[j] + cs.b_blocks[j];
        out << "component " << j + 1 << " (states " << format_states(cs.components[j]) << "): ";
        if (block.rows() == 1 && block(0, 0) <= 0.0) {
            out << "transient, no cycle\n";
            continue;
        }
        SpectralConstants c = spectral_constants(cs.a_blocks[j], cs.b_blocks[j],
                                                 cs.xi_blocks[j], cs.eta_blocks[j],
                                                 /*allow_zero_alpha=*/true);
        AperiodicityResult ap = aperiodicity_index(cs.a_blocks[j], cs.b_blocks[j]);
        out << "lambda = " << format_constant(c.lambda) << ", alpha = " << format_constant(c.alpha)
            << ", beta = " << format_constant(c.beta) << ", gamma = " << format_constant(c.gamma)
            << ", d = " << ap.d;
        if ((ap.d == 1) != ap.spectral_agrees)
            out << " [warning: lattice and spectral aperiodicity checks disagree]";
        out << "\n";
    }
}

int cmd_classify(std::ostream& out, const std::string& path, double tol) {
    ValidatedModel model = validate(load_model_file(path));
    ModelClass mc = classify(model, tol);

    out << "class: " << variant_name(mc.variant);
    if (mc.is_dominant())
        out << " (component " << mc.dominant << " dominant)";
    if (mc.is_equipotent())
        out << " (" << subcase_name(mc.subcase) << ")";
    if (mc.is_unsupported())
        out << ": " << mc.unsupported_reason;
    out << "\n";
    print_components(out, model);

    if (mc.is_unsupported())
        return 1;
    try {
        LimitLaw law = predict_law(mc);
        out << "law: " << law_line(law) << "\n";
    } catch (const LawError& e) {
        out << "law: refused: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

int cmd_constants(std::ostream& out, const std::string& path) {
    ValidatedModel model = validate(load_model_file(path));
    print_components(out, model);
    return 0;
}

int cmd_dist(std::ostream& out, const std::string& path, long n, const std::string& csv) {
    ValidatedModel model = validate(load_model_file(path));
    ExactDistribution dist = exact_distribution(model, n);
    if (csv == "-") {
        write_distribution_csv(dist, out);
        return 0;
    }
    char buf[64];
    out << "n = " << dist.n << "\n";
    std::snprintf(buf, sizeof(buf), "%.12g", dist.mean);
    out << "mean = " << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.12g", dist.variance);
    out << "variance = " << buf << "\n";
    if (!csv.empty()) {
        std::ofstream file(csv, std::ios::binary);
        if (!file)
            throw DistributionError("cannot write CSV file '" + csv + "'");
        write_distribution_csv(dist, file);
        out << "csv: " << csv << "\n";
    }
    return 0;
}

int cmd_verify(std::ostream& out, const std::string& path, const std::vector<long>& grid,
               const std::array<double, 2>& band, const std::string& report_path,
               const std::string& svg_path) {
    ValidatedModel model = validate(load_model_file(path));
    LimitLaw law = predict_law(classify(model));
    out << "law: " << law_line(law) << "\n";
    ConvergenceReport report = convergence_report(model, law, grid, band);
    char buf[64];
    for (const auto& e : report.entries) {
        std::snprintf(buf, sizeof(buf), "%.6e", e.discrepancy);
        out << "n = " << e.n << ": D = " << buf << "  (" << e.window << ")\n";
    }
    std::snprintf(buf, sizeof(buf), "%.4f", report.slope);
    out << "slope = " << buf;
    std::snprintf(buf, sizeof(buf), "%.4f", report.slope_stderr);
    out << " (stderr " << buf << "), band [";
    std::snprintf(buf, sizeof(buf), "%g", report.band[0]);
    out << buf << ", ";
    std::snprintf(buf, sizeof(buf), "%g", report.band[1]);
    out << buf << "]: " << (report.pass ? "pass" : "fail") << "\n";
    if (!report_path.empty()) {
        std::ofstream file(report_path, std::ios::binary);
        if (!file)
            throw VerifyError("cannot write report file '" + report_path + "'");
        file << report_to_json(report);
        out << "report: " << report_path << "\n";
    }
    if (!svg_path.empty()) {
        write_svg_file(report, svg_path);
        out << "svg: " << svg_path << "\n";
    }
    return 0;
}

int cmd_sample(std::ostream& out, const std::string& path, long n, long count,
               std::uint64_t seed) {
    ValidatedModel model = validate(load_model_file(path));
    std::vector<std::uint64_t> hist = sample_counts(model, n, count, seed);
    out << "k,count\n";
    for (size_t k = 0; k < hist.size(); ++k)
        out << k << ',' << hist[k] << '\n';
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"symbol-occurrence statistics of weighted finite automata"};
    app.require_subcommand(1);

    std::string model_path, csv_path, report_path, svg_path, grid_arg, band_arg;
    long n = 0, count = 0;
    std::uint64_t seed = 1;
    double tol = 1e-9;

    auto* classify_cmd = app.add_subcommand(
        "classify", "component structure, spectral constants and predicted local law");
    classify_cmd->add_option("model", model_path, "model file")->required();
    classify_cmd->add_option("--tol", tol, "relative tolerance for equality of constants");

    auto* constants_cmd =
        app.add_subcommand("constants", "spectral constants per irreducible component");
    constants_cmd->add_option("model", model_path, "model file")->required();

    auto* dist_cmd = app.add_subcommand("dist", "exact occurrence distribution at length n");
    dist_cmd->add_option("model", model_path, "model file")->required();
    dist_cmd->add_option("-n", n, "word length")->required();
    dist_cmd->add_option("--csv", csv_path, "write k,p rows to this file ('-' for stdout)");

    auto* verify_cmd = app.add_subcommand(
        "verify", "discrepancy against the predicted law over a grid of lengths");
    verify_cmd->add_option("model", model_path, "model file")->required();
    verify_cmd->add_option("--grid", grid_arg, "comma-separated increasing lengths (>= 3)")
        ->required();
    verify_cmd->add_option("--band", band_arg, "slope acceptance band LO,HI");
    verify_cmd->add_option("--report", report_path, "write the JSON report here");
    verify_cmd->add_option("--svg", svg_path, "write a log-log plot here");

    auto* sample_cmd = app.add_subcommand("sample", "seeded Monte Carlo histogram of Y_n");
    sample_cmd->add_option("model", model_path, "model file")->required();
    sample_cmd->add_option("-n", n, "word length")->required();
    sample_cmd->add_option("--count", count, "number of words")->required();
    sample_cmd->add_option("--seed", seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (classify_cmd->parsed())
            return cmd_classify(out, model_path, tol);
        if (constants_cmd->parsed())
            return cmd_constants(out, model_path);
        if (dist_cmd->parsed())
            return cmd_dist(out, model_path, n, csv_path);
        if (verify_cmd->parsed()) {
            std::vector<long> grid;
            std::stringstream ss(grid_arg);
            std::string item;
            while (std::getline(ss, item, ','))
                grid.push_back(std::stol(item));
            std::array<double, 2> band{-0.75, -0.25};
            if (!band_arg.empty()) {
                auto comma = band_arg.find(',');
                if (comma == std::string::npos) {
                    err << "usage error: --band expects LO,HI\n";
                    return 2;
                }
                band[0] = std::stod(band_arg.substr(0, comma));
                band[1] = std::stod(band_arg.substr(comma + 1));
            }
            return cmd_verify(out, model_path, grid, band, report_path, svg_path);
        }
        if (sample_cmd->parsed())
            return cmd_sample(out, model_path, n, count, seed);
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace symstat
