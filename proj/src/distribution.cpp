#include "symstat/distribution.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace symstat {

namespace {

void check_n(const ValidatedModel& model, long n) {
    if (n < 0)
        throw DistributionError("word length n must be nonnegative");
    if (n == 0 && model.initial().dot(model.final_weights()) <= 0.0)
        throw DistributionError("n = 0 has no accepted word (xi'eta = 0)");
}

} // namespace

ExactDistribution exact_distribution(const ValidatedModel& model, long n) {
    check_n(model, n);
    const int m = model.size();
    const Matrix& a = model.a_matrix;
    const Matrix& b = model.b_matrix;

    // layer[k*m + i] = i-th entry of v_{j,k}; layers roll between j-1 and j.
    std::vector<double> cur(static_cast<size_t>(n + 1) * m, 0.0);
    std::vector<double> next(static_cast<size_t>(n + 1) * m, 0.0);
    for (int i = 0; i < m; ++i)
        cur[i] = model.final_weights()(i);

    for (long j = 1; j <= n; ++j) {
        std::fill(next.begin(), next.begin() + (j + 1) * m, 0.0);
        for (long k = 0; k <= j; ++k) {
            double* out = next.data() + k * m;
            if (k >= 1) {
                const double* prev = cur.data() + (k - 1) * m;
                for (int r = 0; r < m; ++r) {
                    double acc = 0.0;
                    for (int cidx = 0; cidx < m; ++cidx)
                        acc += a(r, cidx) * prev[cidx];
                    out[r] += acc;
                }
            }
            if (k <= j - 1) {
                const double* prev = cur.data() + k * m;
                for (int r = 0; r < m; ++r) {
                    double acc = 0.0;
                    for (int cidx = 0; cidx < m; ++cidx)
                        acc += b(r, cidx) * prev[cidx];
                    out[r] += acc;
                }
            }
        }
        double mass = 0.0;
        for (long idx = 0; idx < (j + 1) * m; ++idx)
            mass += next[idx];
        if (!(mass > 0.0) || !std::isfinite(mass))
            throw DistributionError("layer mass underflowed or overflowed at step " +
                                    std::to_string(j));
        for (long idx = 0; idx < (j + 1) * m; ++idx)
            next[idx] /= mass;
        cur.swap(next);
    }

    ExactDistribution dist;
    dist.n = n;
    dist.probabilities.assign(n + 1, 0.0);
    double total = 0.0;
    for (long k = 0; k <= n; ++k) {
        double w = 0.0;
        for (int i = 0; i < m; ++i)
            w += model.initial()(i) * cur[k * m + i];
        dist.probabilities[k] = w;
        total += w;
    }
    if (!(total > 0.0))
        throw DistributionError("total accepted weight is zero at length " + std::to_string(n));
    double mean = 0.0, second = 0.0;
    for (long k = 0; k <= n; ++k) {
        dist.probabilities[k] /= total;
        mean += k * dist.probabilities[k];
        second += static_cast<double>(k) * k * dist.probabilities[k];
    }
    dist.mean = mean;
    dist.variance = second - mean * mean;
    return dist;
}

Moments moments(const ValidatedModel& model, long n) {
    check_n(model, n);
    const Matrix& a = model.a_matrix;
    Matrix total = model.total_matrix();

    Vector w0 = model.final_weights();
    Vector w1 = Vector::Zero(model.size());
    Vector w2 = Vector::Zero(model.size());
    for (long j = 0; j < n; ++j) {
        Vector n0 = total * w0;
        Vector n1 = a * w0 + total * w1;
        Vector n2 = a * w0 + 2.0 * (a * w1) + total * w2;
        double mass = n0.sum();
        if (!(mass > 0.0) || !std::isfinite(mass))
            throw DistributionError("mass underflowed or overflowed at step " +
                                    std::to_string(j + 1));
        w0 = n0 / mass;
        w1 = n1 / mass;
        w2 = n2 / mass;
    }
    double h0 = model.initial().dot(w0);
    if (!(h0 > 0.0))
        throw DistributionError("total accepted weight is zero at length " + std::to_string(n));
    double h1 = model.initial().dot(w1);
    double h2 = model.initial().dot(w2);
    Moments out;
    out.mean = h1 / h0;
    out.variance = h2 / h0 - out.mean * out.mean;
    return out;
}

Complex characteristic_function(const ValidatedModel& model, long n, double t) {
    check_n(model, n);
    ComplexMatrix at = model.a_matrix.cast<Complex>() * std::exp(Complex(0.0, t));
    ComplexMatrix bt = model.b_matrix.cast<Complex>();
    Matrix total = model.total_matrix();

    Eigen::VectorXcd x = model.final_weights().cast<Complex>();
    Vector y = model.final_weights();
    for (long j = 0; j < n; ++j) {
        x = at * x + bt * x;
        y = total * y;
        double mass = y.sum();
        if (!(mass > 0.0) || !std::isfinite(mass))
            throw DistributionError("mass underflowed or overflowed at step " +
                                    std::to_string(j + 1));
        x /= mass;
        y /= mass;
    }
    Complex num = model.initial().cast<Complex>().dot(x);
    double den = model.initial().dot(y);
    if (!(den > 0.0))
        throw DistributionError("total accepted weight is zero at length " + std::to_string(n));
    return num / den;
}

namespace {

// splitmix64; used to derive one independent stream per word index.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4b9e9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct WordStream {
    std::uint64_t state;
    explicit WordStream(std::uint64_t seed, std::uint64_t index)
        : state(mix64(seed ^ mix64(index + 1))) {}
    double uniform() {
        state = mix64(state);
        return static_cast<double>(state >> 11) * 0x1.0p-53;
    }
};

} // namespace

std::vector<std::uint64_t> sample_counts(const ValidatedModel& model, long n,
                                         long count, std::uint64_t seed) {
    check_n(model, n);
    if (count < 1)
        throw DistributionError("sample count must be positive");
    const auto& letters = model.representation.letter_matrices;
    Matrix total = model.total_matrix();

    // suffix[j] ~ (A+B)^{n-j} eta, renormalized; only direction matters.
    std::vector<Vector> suffix(n + 1);
    suffix[n] = model.final_weights();
    for (long j = n - 1; j >= 0; --j) {
        suffix[j] = total * suffix[j + 1];
        double mass = suffix[j].sum();
        if (!(mass > 0.0) || !std::isfinite(mass))
            throw DistributionError("suffix mass underflowed or overflowed");
        suffix[j] /= mass;
    }

    std::vector<std::uint64_t> hist(n + 1, 0);
    for (long w = 0; w < count; ++w) {
        WordStream rng(seed, static_cast<std::uint64_t>(w));
        Eigen::RowVectorXd prefix = model.initial().transpose();
        long occurrences = 0;
        for (long j = 0; j < n; ++j) {
            double sum = 0.0;
            std::vector<double> letter_mass;
            letter_mass.reserve(letters.size());
            for (const auto& [c, mat] : letters) {
                double v = (prefix * mat).dot(suffix[j + 1]);
                letter_mass.push_back(v);
                sum += v;
            }
            double draw = rng.uniform() * sum;
            size_t pick = 0;
            double acc = 0.0;
            for (size_t i = 0; i < letter_mass.size(); ++i) {
                acc += letter_mass[i];
                if (draw < acc || i + 1 == letter_mass.size()) {
                    pick = i;
                    break;
                }
            }
            auto it = letters.begin();
            std::advance(it, pick);
            if (it->first == model.representation.counted_letter)
                ++occurrences;
            prefix = prefix * it->second;
            double mass = prefix.sum();
            prefix /= mass;
        }
        ++hist[occurrences];
    }
    return hist;
}

void write_distribution_csv(const ExactDistribution& dist, std::ostream& out) {
    out << "k,p\n";
    char buf[48];
    for (long k = 0; k <= dist.n; ++k) {
        std::snprintf(buf, sizeof(buf), "%.17g", dist.probabilities[k]);
        out << k << ',' << buf << '\n';
    }
}

} // namespace symstat
