#pragma once

#include "symstat/common.hpp"

namespace symstat {

// Perron data of an irreducible nonnegative matrix M: the dominant positive
// eigenvalue together with strictly positive left (zeta) and right (nu)
// eigenvectors normalized so that zeta'nu = 1.
struct PerronTriple {
    double lambda = 0.0;
    Vector left;   // zeta
    Vector right;  // nu
};

// Leading constants of the occurrence statistic for one irreducible
// component with counted matrix A and rest matrix B:
//   lambda  Perron eigenvalue of A+B
//   alpha   (xi'nu)(zeta'eta), the component's weight in sum models
//   beta    u'(0)/lambda, leading mean coefficient: E ~ beta*n
//   gamma   u''(0)/lambda - beta^2, leading variance coefficient
// where u(z) is the dominant eigenvalue branch of A e^z + B with u(0)=lambda.
struct SpectralConstants {
    double lambda = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double u_prime = 0.0;   // u'(0)
    double u_second = 0.0;  // u''(0)
};

// Power iteration on M + I (the shift makes the dominant eigenvalue of the
// iterated matrix strictly dominant even for periodic irreducible M),
// followed by a Rayleigh-quotient refinement. The caller guarantees
// irreducibility; a reachability check guards against misuse.
PerronTriple perron_triple(const Matrix& m);

// The eigenvalue u(z) of A e^z + B of largest modulus on the branch through
// u(0) = lambda, tracked by picking the eigenvalue closest to the first-order
// prediction lambda + u'(0) z. Intended for |z| <= 0.1, where the branch is
// analytic. Fails if two eigenvalues are equally close to the prediction.
Complex dominant_eigenvalue_at(const Matrix& a, const Matrix& b, Complex z);

// Constants for one component, with beta and gamma computed twice: by
// first/second-order eigenvalue perturbation (returned) and by Richardson-
// extrapolated finite differences of dominant_eigenvalue_at (cross-check,
// 1e-8 relative agreement required). With allow_zero_alpha = false an
// xi/eta block with no mass on the component is an error; communicating
// bicomponent models legitimately have such blocks and pass true.
SpectralConstants spectral_constants(const Matrix& a, const Matrix& b,
                                     const Vector& xi_block, const Vector& eta_block,
                                     bool allow_zero_alpha = false);

} // namespace symstat
