#pragma once

#include "symstat/common.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace symstat {

// Adaptive Gauss-Kronrod 7/15 quadrature on a bounded interval. The Kronrod
// value is returned, the embedded Gauss rule drives the error estimate, and
// intervals are bisected until the local estimate fits its share of the
// absolute tolerance. Every interval is split down to min_depth before the
// estimate is trusted; without that floor, an integrand whose mass sits
// between the nodes of the first rule reports a deceptively small error.
template <typename F>
double integrate(F&& f, double lo, double hi, double tol_abs = 1e-10, int max_depth = 48,
                 int min_depth = 6) {
    static const double kron_nodes[8] = {
        0.000000000000000000000000000000000,
        0.207784955007898467600689403773245,
        0.405845151377397166906606412076961,
        0.586087235467691130294144838258730,
        0.741531185599394439863864773280788,
        0.864864423359769072789712788640926,
        0.949107912342758524526189684047851,
        0.991455371120812639206854697526329,
    };
    static const double kron_weights[8] = {
        0.209482141084727828012999174891714,
        0.204432940075298892414161999234649,
        0.190350578064785409913256402421014,
        0.169004726639267902826583426598550,
        0.140653259715525918745189590510238,
        0.104790010322250183839876322541518,
        0.063092092629978553290700663189204,
        0.022935322010529224963732008058970,
    };
    static const double gauss_weights[4] = {
        0.417959183673469387755102040816327,
        0.381830050505118944950369775488975,
        0.279705391489276667901467771423780,
        0.129484966168869693270611432679082,
    };

    struct Segment {
        double lo, hi;
        int depth;
    };

    auto gk15 = [&](double a, double b, double& err) {
        double c = 0.5 * (a + b), h = 0.5 * (b - a);
        double fc = f(c);
        double kron = kron_weights[0] * fc;
        double gauss = gauss_weights[0] * fc;
        for (int i = 1; i < 8; ++i) {
            double fp = f(c + h * kron_nodes[i]);
            double fm = f(c - h * kron_nodes[i]);
            kron += kron_weights[i] * (fp + fm);
            if (i % 2 == 0)
                gauss += gauss_weights[i / 2] * (fp + fm);
        }
        kron *= h;
        gauss *= h;
        err = std::abs(kron - gauss);
        return kron;
    };

    double total = 0.0;
    std::vector<Segment> stack;
    stack.push_back({lo, hi, 0});
    while (!stack.empty()) {
        Segment s = stack.back();
        stack.pop_back();
        double err = 0.0;
        double val = gk15(s.lo, s.hi, err);
        double share = tol_abs * (s.hi - s.lo) / (hi - lo);
        if ((s.depth >= min_depth && err <= share) || s.depth >= max_depth) {
            total += val;
        } else {
            double mid = 0.5 * (s.lo + s.hi);
            stack.push_back({s.lo, mid, s.depth + 1});
            stack.push_back({mid, s.hi, s.depth + 1});
        }
    }
    return total;
}

} // namespace symstat
