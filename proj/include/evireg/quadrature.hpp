#pragma once

#include <cmath>
#include <queue>
#include <stdexcept>

namespace evireg {

struct QuadratureResult {
    double value;
    double error_estimate;
};

namespace detail {

// Gauss-Kronrod 15-point nodes/weights on [-1, 1] with the embedded
// 7-point Gauss rule for the error estimate.
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

template <typename F>
inline void kronrod_panel(const F& f, double a, double b, double& k15, double& g7) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f_mid = f(mid);
    double kron = kKronrodWeights[7] * f_mid;
    double gauss = kGaussWeights[3] * f_mid;
    for (int i = 0; i < 7; ++i) {
        const double offset = half * kKronrodNodes[i];
        const double pair = f(mid - offset) + f(mid + offset);
        kron += kKronrodWeights[i] * pair;
        if (i % 2 == 1) {
            gauss += kGaussWeights[i / 2] * pair;
        }
    }
    k15 = kron * half;
    g7 = gauss * half;
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a, b]. The panel with the
/// worst |K15 - G7| estimate is bisected until the summed estimate meets
/// abs_tol; throws if the panel budget runs out first (non-convergence).
template <typename F>
QuadratureResult integrate(const F& f, double a, double b, double abs_tol = 1e-10,
                           int max_panels = 4000) {
    struct Panel {
        double lo, hi, value, error;
        bool operator<(const Panel& other) const { return error < other.error; }
    };
    auto make_panel = [&f](double lo, double hi) {
        double k15 = 0.0, g7 = 0.0;
        detail::kronrod_panel(f, lo, hi, k15, g7);
        return Panel{lo, hi, k15, std::abs(k15 - g7)};
    };

    std::priority_queue<Panel> queue;
    queue.push(make_panel(a, b));
    double total_value = queue.top().value;
    double total_error = queue.top().error;
    int panels = 1;
    while (total_error > abs_tol) {
        if (panels >= max_panels) {
            throw std::runtime_error("integrate: tolerance not reached within panel budget");
        }
        const Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (mid <= worst.lo || mid >= worst.hi) {
            throw std::runtime_error("integrate: interval too small to subdivide further");
        }
        const Panel left = make_panel(worst.lo, mid);
        const Panel right = make_panel(mid, worst.hi);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++panels;
    }
    return {total_value, total_error};
}

/// Integral of f over (0, inf) via the substitution x = t / (1 - t).
template <typename F>
QuadratureResult integrate_zero_to_inf(const F& f, double abs_tol = 1e-10) {
    auto g = [&f](double t) {
        const double one_minus = 1.0 - t;
        const double x = t / one_minus;
        const double v = f(x) / (one_minus * one_minus);
        return std::isfinite(v) ? v : 0.0;  // endpoint limits of decaying integrands
    };
    return integrate(g, 0.0, 1.0, abs_tol);
}

/// Integral of f over (-inf, inf) via x = center + u / (1 - u^2), u in (-1, 1).
template <typename F>
QuadratureResult integrate_real_line(const F& f, double center = 0.0,
                                     double abs_tol = 1e-10) {
    auto g = [&f, center](double u) {
        const double d = 1.0 - u * u;
        const double x = center + u / d;
        const double jac = (1.0 + u * u) / (d * d);
        const double v = f(x) * jac;
        return std::isfinite(v) ? v : 0.0;
    };
    return integrate(g, -1.0, 1.0, abs_tol);
}

}  // namespace evireg
