#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

// Invariant checks over randomly generated models, with a hand-rolled
// generator: sparse nonnegative letter matrices over sizes 1..5, retried
// until validation accepts. Sizes stay small enough that every possible
// cycle-lattice period divides the spectral sampling grid.

#include "symstat/distribution.hpp"
#include "symstat/model.hpp"
#include "symstat/structure.hpp"

#include "oracles.hpp"

#include <cmath>
#include <complex>
#include <random>

using namespace symstat;

namespace {

LinearRepresentation random_model(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> size_dist(1, 5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> weight(0.1, 3.0);

    while (true) {
        LinearRepresentation rep;
        rep.size = size_dist(rng);
        rep.counted_letter = 'a';
        const double density = 0.35 + 0.4 * unit(rng);
        for (char c : {'a', 'b'}) {
            Matrix m = Matrix::Zero(rep.size, rep.size);
            for (int i = 0; i < rep.size; ++i)
                for (int j = 0; j < rep.size; ++j)
                    if (unit(rng) < density)
                        m(i, j) = weight(rng);
            rep.letter_matrices[c] = m;
        }
        rep.initial = Vector::Zero(rep.size);
        rep.final_weights = Vector::Zero(rep.size);
        for (int i = 0; i < rep.size; ++i) {
            if (unit(rng) < 0.6)
                rep.initial(i) = weight(rng);
            if (unit(rng) < 0.6)
                rep.final_weights(i) = weight(rng);
        }
        try {
            validate(rep);
            return rep;
        } catch (const Error&) {
            continue;
        }
    }
}

} // namespace

TEST_CASE("serialization round-trips on random models") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        LinearRepresentation rep = random_model(rng);
        LinearRepresentation again = parse_model_text(serialize_model(rep));
        CHECK(again.initial == rep.initial);
        CHECK(again.final_weights == rep.final_weights);
        for (const auto& [c, mat] : rep.letter_matrices)
            CHECK(again.letter_matrices.at(c) == mat);
    }
}

TEST_CASE("random models match exhaustive enumeration") {
    std::mt19937_64 rng(999);
    for (int trial = 0; trial < 25; ++trial) {
        LinearRepresentation rep = random_model(rng);
        ValidatedModel vm = validate(rep);
        for (int n : {1, 3, 6}) {
            ExactDistribution d = exact_distribution(vm, n);
            std::vector<double> expected = oracle::brute_force_distribution(rep, n);
            double sum = 0.0;
            for (int k = 0; k <= n; ++k) {
                CHECK(d.probabilities[k] >= 0.0);
                CHECK(std::abs(d.probabilities[k] - expected[k]) <= 1e-10);
                sum += d.probabilities[k];
            }
            CHECK(std::abs(sum - 1.0) <= 1e-10);
        }
    }
}

TEST_CASE("characteristic function equals the spectrum sum on random models") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 15; ++trial) {
        ValidatedModel vm = validate(random_model(rng));
        ExactDistribution d = exact_distribution(vm, 40);
        for (double t : {0.37, 1.9}) {
            Complex direct = characteristic_function(vm, 40, t);
            Complex summed = 0.0;
            for (int k = 0; k <= 40; ++k)
                summed += d.probabilities[k] * std::exp(Complex(0.0, t * k));
            CHECK(std::abs(direct - summed) <= 1e-10);
            CHECK(std::abs(direct) <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("moment recurrences agree with the distribution on random models") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        ValidatedModel vm = validate(random_model(rng));
        ExactDistribution d = exact_distribution(vm, 35);
        Moments mom = moments(vm, 35);
        CHECK(std::abs(mom.mean - d.mean) <= 1e-8 * std::max(1.0, d.mean));
        CHECK(std::abs(mom.variance - d.variance) <= 1e-8 * std::max(1.0, d.variance));
    }
}

TEST_CASE("lattice period and spectral criterion agree on random components") {
    // With at most 5 states a simple cycle has length <= 5, so any period
    // divides the 720-point grid and both checks are exact.
    std::mt19937_64 rng(31337);
    int checked = 0;
    for (int trial = 0; trial < 30; ++trial) {
        ValidatedModel vm = validate(random_model(rng));
        ComponentStructure cs = condensation(vm);
        for (size_t c = 0; c < cs.components.size(); ++c) {
            Matrix block = cs.a_blocks[c] + cs.b_blocks[c];
            if (block.rows() == 1 && block(0, 0) <= 0.0)
                continue;  // transient single state
            AperiodicityResult r = aperiodicity_index(cs.a_blocks[c], cs.b_blocks[c]);
            CHECK((r.d == 1) == r.spectral_agrees);
            ++checked;
        }
    }
    CHECK(checked > 30);
}

TEST_CASE("classification is stable under permutation on random models") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 15; ++trial) {
        LinearRepresentation rep = random_model(rng);
        const int m = rep.size;
        std::vector<int> perm(m);
        for (int i = 0; i < m; ++i)
            perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);

        LinearRepresentation shuffled = rep;
        for (int i = 0; i < m; ++i) {
            shuffled.initial(perm[i]) = rep.initial(i);
            shuffled.final_weights(perm[i]) = rep.final_weights(i);
        }
        for (const auto& [c, matrix] : rep.letter_matrices) {
            Matrix p = Matrix::Zero(m, m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    p(perm[i], perm[j]) = matrix(i, j);
            shuffled.letter_matrices[c] = p;
        }

        ModelClass a = classify(validate(rep));
        ModelClass b = classify(validate(shuffled));
        CHECK(a.variant == b.variant);
        if (a.variant != Variant::Unsupported && a.is_equipotent())
            CHECK(a.subcase == b.subcase);
    }
}
