#include "symstat/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace symstat {

namespace {

bool strongly_connected(const Matrix& m) {
    const int n = static_cast<int>(m.rows());
    for (int pass = 0; pass < 2; ++pass) {
        std::vector<bool> seen(n, false);
        std::vector<int> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w = 0; w < n; ++w) {
                double e = pass == 0 ? m(v, w) : m(w, v);
                if (e > 0.0 && !seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
        for (bool s : seen)
            if (!s)
                return false;
    }
    return true;
}

Vector power_iterate(const Matrix& shifted, int budget, double tol) {
    const int n = static_cast<int>(shifted.rows());
    Vector v = Vector::Ones(n) / n;
    for (int it = 0; it < budget; ++it) {
        Vector w = shifted * v;
        double s = w.sum();
        if (!(s > 0.0))
            throw SpectralError("power iteration collapsed; matrix is not irreducible");
        w /= s;
        double diff = (w - v).cwiseAbs().maxCoeff();
        v = w;
        if (diff < tol)
            return v;
    }
    throw SpectralError("power iteration did not converge within the budget; "
                        "input is near-degenerate");
}

} // namespace

PerronTriple perron_triple(const Matrix& m) {
    const int n = static_cast<int>(m.rows());
    if (n == 0 || m.rows() != m.cols())
        throw SpectralError("perron_triple requires a square nonempty matrix");
    if (m.minCoeff() < 0.0)
        throw SpectralError("perron_triple requires a nonnegative matrix");
    if (n == 1) {
        if (m(0, 0) <= 0.0)
            throw SpectralError("matrix is not irreducible");
        PerronTriple t;
        t.lambda = m(0, 0);
        t.left = Vector::Ones(1);
        t.right = Vector::Ones(1);
        return t;
    }
    if (!strongly_connected(m))
        throw SpectralError("matrix is not irreducible");

    const int budget = 200000;
    const double tol = 1e-15;
    Matrix shifted = m + Matrix::Identity(n, n);
    Vector nu = power_iterate(shifted, budget, tol);
    Vector zeta = power_iterate(shifted.transpose(), budget, tol);

    // Rayleigh-quotient refinement with both vectors.
    double lambda = zeta.dot(m * nu) / zeta.dot(nu);

    if (nu.minCoeff() <= 0.0 || zeta.minCoeff() <= 0.0)
        throw SpectralError("Perron vectors are not strictly positive; "
                            "matrix is not irreducible");

    nu /= nu.sum();
    zeta /= zeta.dot(nu);

    double res_r = (m * nu - lambda * nu).cwiseAbs().maxCoeff();
    double res_l = (m.transpose() * zeta - lambda * zeta).cwiseAbs().maxCoeff();
    double scale = lambda * std::max(nu.cwiseAbs().maxCoeff(), zeta.cwiseAbs().maxCoeff());
    if (res_r > 1e-10 * scale || res_l > 1e-10 * scale)
        throw SpectralError("Perron pair residual above tolerance");

    PerronTriple t;
    t.lambda = lambda;
    t.left = std::move(zeta);
    t.right = std::move(nu);
    return t;
}

Complex dominant_eigenvalue_at(const Matrix& a, const Matrix& b, Complex z) {
    PerronTriple t = perron_triple(a + b);
    double u1 = t.left.dot(a * t.right);
    Complex prediction = t.lambda + u1 * z;

    ComplexMatrix mz = a.cast<Complex>() * std::exp(z) + b.cast<Complex>();
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(mz, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw SpectralError("eigenvalue computation failed");
    const auto& eigs = solver.eigenvalues();

    int best = 0;
    double best_d = std::abs(eigs(0) - prediction);
    double second_d = std::numeric_limits<double>::infinity();
    for (int i = 1; i < eigs.size(); ++i) {
        double d = std::abs(eigs(i) - prediction);
        if (d < best_d) {
            second_d = best_d;
            best_d = d;
            best = i;
        } else if (d < second_d) {
            second_d = d;
        }
    }
    if (eigs.size() > 1 && second_d - best_d < 1e-12 * std::max(1.0, t.lambda))
        throw SpectralError("dominant eigenvalue branch is ambiguous at this point");
    return eigs(best);
}

namespace {

// Richardson extrapolation of central differences of u along the real axis.
// Two levels each: truncation O(h^6), far below the cross-check tolerance.
double fd_first_derivative(const Matrix& a, const Matrix& b, double h0) {
    auto d = [&](double h) {
        Complex up = dominant_eigenvalue_at(a, b, Complex(h, 0.0));
        Complex um = dominant_eigenvalue_at(a, b, Complex(-h, 0.0));
        return (up - um).real() / (2.0 * h);
    };
    double d1 = d(h0), d2 = d(h0 / 2), d3 = d(h0 / 4);
    double r1 = (4 * d2 - d1) / 3, r2 = (4 * d3 - d2) / 3;
    return (16 * r2 - r1) / 15;
}

double fd_second_derivative(const Matrix& a, const Matrix& b, double lambda, double h0) {
    auto s = [&](double h) {
        Complex up = dominant_eigenvalue_at(a, b, Complex(h, 0.0));
        Complex um = dominant_eigenvalue_at(a, b, Complex(-h, 0.0));
        return (up + um - 2.0 * lambda).real() / (h * h);
    };
    double s1 = s(h0), s2 = s(h0 / 2), s3 = s(h0 / 4);
    double q1 = (4 * s2 - s1) / 3, q2 = (4 * s3 - s2) / 3;
    return (16 * q2 - q1) / 15;
}

} // namespace

SpectralConstants spectral_constants(const Matrix& a, const Matrix& b,
                                     const Vector& xi_block, const Vector& eta_block,
                                     bool allow_zero_alpha) {
    const int n = static_cast<int>(a.rows());
    Matrix m = a + b;
    PerronTriple t = perron_triple(m);

    SpectralConstants c;
    c.lambda = t.lambda;
    c.alpha = xi_block.dot(t.right) * t.left.dot(eta_block);
    if (!allow_zero_alpha && c.alpha <= 0.0)
        throw SpectralError("component weight alpha is zero: the initial or final "
                            "block carries no mass on this component");

    // First-order perturbation: u'(0) = zeta'A nu.
    Vector a_nu = a * t.right;
    c.u_prime = t.left.dot(a_nu);

    // Second order: u''(0) = zeta'A nu + 2 zeta'A R A nu, with R the reduced
    // resolvent of M at lambda. R A nu is obtained from the bordered system
    //   [ lambda I - M   nu ] [w ]   [ A nu ]
    //   [    zeta'        0 ] [mu] = [  0   ]
    // which is nonsingular because lambda is simple.
    Matrix bordered = Matrix::Zero(n + 1, n + 1);
    bordered.topLeftCorner(n, n) = t.lambda * Matrix::Identity(n, n) - m;
    bordered.topRightCorner(n, 1) = t.right;
    bordered.bottomLeftCorner(1, n) = t.left.transpose();
    Vector rhs = Vector::Zero(n + 1);
    rhs.head(n) = a_nu;
    Vector sol = bordered.fullPivLu().solve(rhs);
    Vector w = sol.head(n);
    c.u_second = c.u_prime + 2.0 * t.left.dot(a * w);

    c.beta = c.u_prime / c.lambda;
    c.gamma = c.u_second / c.lambda - c.beta * c.beta;

    // Cross-check against finite differences of the tracked eigenvalue branch.
    double fd_beta = fd_first_derivative(a, b, 0.02) / c.lambda;
    double fd_u2 = fd_second_derivative(a, b, c.lambda, 0.04);
    double fd_gamma = fd_u2 / c.lambda - fd_beta * fd_beta;
    // Relative 1e-8 with a small absolute floor so exact zeros (periodic
    // components have gamma = 0) compare against finite-difference roundoff.
    double beta_tol = std::max(1e-8 * std::max(std::abs(c.beta), std::abs(fd_beta)), 1e-10);
    double gamma_tol = std::max(1e-8 * std::max(std::abs(c.gamma), std::abs(fd_gamma)), 1e-9);
    if (std::abs(fd_beta - c.beta) > beta_tol || std::abs(fd_gamma - c.gamma) > gamma_tol)
        throw SpectralError("perturbation and finite-difference constants disagree "
                            "beyond 1e-8; input is near-degenerate");
    return c;
}

} // namespace symstat
