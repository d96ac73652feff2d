#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symstat/distribution.hpp"
#include "symstat/model.hpp"

#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

using namespace symstat;

namespace {

std::string models_dir = MODELS_DIR;

ValidatedModel load(const std::string& name) {
    return validate(load_model_file(models_dir + "/" + name));
}

const char* kCorpus[] = {"fig1.json",          "fig2.json",     "tmix.json",
                         "binomial.json",      "primitive2.json", "periodic_pair.json",
                         "fig1_dominant.json", "fig2_dominant.json"};

} // namespace

TEST_CASE("coin flips at n = 2") {
    ExactDistribution d = exact_distribution(load("binomial.json"), 2);
    REQUIRE(d.probabilities.size() == 3);
    CHECK(d.probabilities[0] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(d.probabilities[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(d.probabilities[2] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(d.mean == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(d.variance == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("figure-1 at n = 2 accepts four words") {
    // bc, ac (weight 2), ca, cb (weight 2): one occurrence only for ac/ca
    ExactDistribution d = exact_distribution(load("fig1.json"), 2);
    CHECK(d.probabilities[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(d.probabilities[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(d.probabilities[2] == doctest::Approx(0.0));
    CHECK(d.mean == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(d.variance == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("binomial closed form up to n = 30") {
    ValidatedModel vm = load("binomial.json");
    for (int n : {1, 5, 17, 30}) {
        ExactDistribution d = exact_distribution(vm, n);
        std::vector<double> expected = oracle::binomial_half(n);
        for (int k = 0; k <= n; ++k)
            CHECK(std::abs(d.probabilities[k] - expected[k]) <= 1e-12);
    }
}

TEST_CASE("exhaustive enumeration matches the recurrence for n <= 8") {
    for (const char* name : kCorpus) {
        LinearRepresentation rep = load_model_file(models_dir + "/" + name);
        ValidatedModel vm = validate(rep);
        for (int n = 1; n <= 8; ++n) {
            ExactDistribution d = exact_distribution(vm, n);
            std::vector<double> expected = oracle::brute_force_distribution(rep, n);
            for (int k = 0; k <= n; ++k)
                CHECK(std::abs(d.probabilities[k] - expected[k]) <= 1e-10);
        }
    }
}

TEST_CASE("distributions are normalized with consistent moments") {
    for (const char* name : kCorpus) {
        ExactDistribution d = exact_distribution(load(name), 50);
        double sum = 0.0, mean = 0.0, second = 0.0;
        for (int k = 0; k <= 50; ++k) {
            CHECK(d.probabilities[k] >= 0.0);
            sum += d.probabilities[k];
            mean += k * d.probabilities[k];
            second += static_cast<double>(k) * k * d.probabilities[k];
        }
        CHECK(std::abs(sum - 1.0) <= 1e-10);
        CHECK(std::abs(d.mean - mean) <= 1e-8 * std::max(1.0, std::abs(mean)));
        double var = second - mean * mean;
        CHECK(std::abs(d.variance - var) <= 1e-8 * std::max(1.0, std::abs(var)));
    }
}

TEST_CASE("moment recurrences agree with the full distribution") {
    for (const char* name : kCorpus) {
        ValidatedModel vm = load(name);
        ExactDistribution d = exact_distribution(vm, 50);
        Moments mom = moments(vm, 50);
        CHECK(mom.mean == doctest::Approx(d.mean).epsilon(1e-8));
        CHECK(mom.variance == doctest::Approx(d.variance).epsilon(1e-8));
    }
}

TEST_CASE("binomial moments at n = 100") {
    Moments mom = moments(load("binomial.json"), 100);
    CHECK(mom.mean == doctest::Approx(50.0).epsilon(1e-12));
    CHECK(mom.variance == doctest::Approx(25.0).epsilon(1e-12));
}

TEST_CASE("figure-1 moments at n = 2") {
    Moments mom = moments(load("fig1.json"), 2);
    CHECK(mom.mean == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(mom.variance == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("characteristic function basics") {
    ValidatedModel binom = load("binomial.json");
    CHECK(std::abs(characteristic_function(binom, 7, 0.0) - 1.0) <= 1e-14);
    CHECK(std::abs(characteristic_function(binom, 3, std::numbers::pi)) <= 1e-14);

    ValidatedModel fig1 = load("fig1.json");
    ExactDistribution d = exact_distribution(fig1, 8);
    Complex direct = characteristic_function(fig1, 8, 0.3);
    Complex summed = 0.0;
    for (int k = 0; k <= 8; ++k)
        summed += d.probabilities[k] * std::exp(Complex(0.0, 0.3 * k));
    CHECK(std::abs(direct - summed) <= 1e-10);
}

TEST_CASE("characteristic function matches the distribution on a t grid") {
    for (const char* name : {"fig1.json", "fig2.json", "binomial.json"}) {
        ValidatedModel vm = load(name);
        ExactDistribution d = exact_distribution(vm, 200);
        for (double t : {-2.5, -0.7, 0.11, 1.0, 3.0}) {
            Complex direct = characteristic_function(vm, 200, t);
            Complex summed = 0.0;
            for (int k = 0; k <= 200; ++k)
                summed += d.probabilities[k] * std::exp(Complex(0.0, t * k));
            CHECK(std::abs(direct - summed) <= 1e-10);
            CHECK(std::abs(direct) <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("length zero is accepted only with initial-final overlap") {
    ExactDistribution d = exact_distribution(load("binomial.json"), 0);
    CHECK(d.probabilities == std::vector<double>{1.0});
    CHECK_THROWS_AS(exact_distribution(load("fig1.json"), 0), DistributionError);
}

TEST_CASE("sampler tracks the exact distribution") {
    ValidatedModel binom = load("binomial.json");
    auto hist = sample_counts(binom, 1, 100000, 7);
    double phat = static_cast<double>(hist[1]) / 100000.0;
    CHECK(std::abs(phat - 0.5) <= 4.0 * std::sqrt(0.25 / 100000.0));

    ValidatedModel fig1 = load("fig1.json");
    auto h2 = sample_counts(fig1, 2, 100000, 11);
    double p1 = static_cast<double>(h2[1]) / 100000.0;
    CHECK(std::abs(p1 - 0.5) <= 4.0 * std::sqrt(0.25 / 100000.0));
}

TEST_CASE("single draw lands in the support") {
    auto hist = sample_counts(load("fig2.json"), 10, 1, 3);
    std::uint64_t total = 0;
    for (auto v : hist)
        total += v;
    CHECK(total == 1);
}

TEST_CASE("sampling is seed-deterministic") {
    ValidatedModel vm = load("fig2.json");
    auto a = sample_counts(vm, 12, 2000, 99);
    auto b = sample_counts(vm, 12, 2000, 99);
    auto c = sample_counts(vm, 12, 2000, 100);
    CHECK(a == b);
    CHECK(a != c);
}

TEST_CASE("csv export carries the full distribution") {
    ExactDistribution d = exact_distribution(load("binomial.json"), 4);
    std::ostringstream out;
    write_distribution_csv(d, out);
    CHECK(out.str() ==
          "k,p\n0,0.0625\n1,0.25\n2,0.375\n3,0.25\n4,0.0625\n");
}
