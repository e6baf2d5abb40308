#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "evireg/rng.hpp"
#include "evireg/special_functions.hpp"

namespace evireg {

/// Shape k and scale lambda of a Weibull distribution.
struct WeibullParams {
    double k;
    double lambda;

    WeibullParams(double k_, double lambda_) : k(k_), lambda(lambda_) {
        if (!(k > 0.0) || !std::isfinite(k)) {
            throw std::invalid_argument("WeibullParams: k must be finite and > 0");
        }
        if (!(lambda > 0.0) || !std::isfinite(lambda)) {
            throw std::invalid_argument("WeibullParams: lambda must be finite and > 0");
        }
    }
};

/// Shape alpha and scale beta of an inverse-gamma distribution.
/// alpha > 0 is accepted so the density stays evaluable on textbook cases;
/// the stricter alpha > 2 prior constraint is enforced where network heads
/// form predictions.
struct InvGammaParams {
    double alpha;
    double beta;

    InvGammaParams(double alpha_, double beta_) : alpha(alpha_), beta(beta_) {
        if (!(alpha > 0.0) || !std::isfinite(alpha)) {
            throw std::invalid_argument("InvGammaParams: alpha must be finite and > 0");
        }
        if (!(beta > 0.0) || !std::isfinite(beta)) {
            throw std::invalid_argument("InvGammaParams: beta must be finite and > 0");
        }
    }
};

/// Weibull density; zero on the negative half line.
inline double weibull_pdf(double y, const WeibullParams& p) {
    if (y < 0.0) return 0.0;
    if (y == 0.0) {
        if (p.k < 1.0) return std::numeric_limits<double>::infinity();
        return p.k == 1.0 ? 1.0 / p.lambda : 0.0;
    }
    const double r = y / p.lambda;
    return (p.k / p.lambda) * std::pow(r, p.k - 1.0) * std::exp(-std::pow(r, p.k));
}

/// Inverse-CDF draw y = lambda * (-ln U)^(1/k), U ~ Uniform(0, 1).
inline double weibull_sample(const WeibullParams& p, Rng& rng) {
    return p.lambda * std::pow(-std::log(rng.uniform()), 1.0 / p.k);
}

/// E[y] = lambda * Gamma(1 + 1/k).
inline double weibull_mean(const WeibullParams& p) {
    return p.lambda * std::exp(log_gamma(1.0 + 1.0 / p.k));
}

/// Var[y] = lambda^2 * (Gamma(1 + 2/k) - Gamma(1 + 1/k)^2).
inline double weibull_variance(const WeibullParams& p) {
    const double g1 = std::exp(log_gamma(1.0 + 1.0 / p.k));
    const double g2 = std::exp(log_gamma(1.0 + 2.0 / p.k));
    return p.lambda * p.lambda * (g2 - g1 * g1);
}

/// Two-parameter Weibull maximum-likelihood fit. The shape is solved by
/// Newton iteration on the profile-likelihood equation
///   sum(y^k ln y)/sum(y^k) - 1/k - mean(ln y) = 0,
/// then lambda = (mean y^k)^(1/k).
inline WeibullParams weibull_fit_mle(std::span<const double> samples) {
    const std::size_t n = samples.size();
    if (n < 10) {
        throw std::invalid_argument("weibull_fit_mle: need at least 10 samples");
    }
    std::vector<double> log_y(n);
    double mean_log = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(samples[i] > 0.0) || !std::isfinite(samples[i])) {
            throw std::invalid_argument("weibull_fit_mle: samples must be positive and finite");
        }
        log_y[i] = std::log(samples[i]);
        mean_log += log_y[i];
    }
    mean_log /= static_cast<double>(n);

    double var_log = 0.0;
    for (double ly : log_y) {
        var_log += (ly - mean_log) * (ly - mean_log);
    }
    var_log /= static_cast<double>(n);
    if (var_log == 0.0) {
        throw std::runtime_error("weibull_fit_mle: degenerate data (all samples equal)");
    }

    // Moment-based starting point: sd(ln y) = pi / (k * sqrt(6)).
    double k = kPi / std::sqrt(6.0 * var_log);
    constexpr int kMaxIter = 100;
    for (int iter = 0; iter < kMaxIter; ++iter) {
        // Sums are shifted by max(ln y) to avoid overflow of y^k.
        const double shift = *std::max_element(log_y.begin(), log_y.end());
        double s0 = 0.0, s1 = 0.0, s2 = 0.0;
        for (double ly : log_y) {
            const double w = std::exp(k * (ly - shift));
            s0 += w;
            s1 += w * ly;
            s2 += w * ly * ly;
        }
        const double ratio = s1 / s0;
        const double g = ratio - 1.0 / k - mean_log;
        const double gp = (s2 / s0 - ratio * ratio) + 1.0 / (k * k);
        double step = g / gp;
        double next = k - step;
        while (next <= 0.0) {  // damped step, keeps the iterate positive
            step *= 0.5;
            next = k - step;
        }
        const bool converged = std::abs(next - k) < 1e-8;
        k = next;
        if (converged) {
            double mean_pow = 0.0;
            for (double ly : log_y) {
                mean_pow += std::exp(k * (ly - shift));
            }
            mean_pow /= static_cast<double>(n);
            const double lambda = std::exp(shift + std::log(mean_pow) / k);
            return WeibullParams(k, lambda);
        }
    }
    throw std::runtime_error("weibull_fit_mle: Newton iteration did not converge");
}

/// Inverse-gamma density beta^alpha / Gamma(alpha) * theta^-(alpha+1) * exp(-beta/theta).
inline double inv_gamma_pdf(double theta, const InvGammaParams& p) {
    if (!(theta > 0.0)) {
        throw std::invalid_argument("inv_gamma_pdf: theta must be > 0");
    }
    const double log_pdf = p.alpha * std::log(p.beta) - log_gamma(p.alpha) -
                           (p.alpha + 1.0) * std::log(theta) - p.beta / theta;
    return std::exp(log_pdf);
}

/// Reciprocal of a Gamma(shape alpha, rate beta) draw.
inline double inv_gamma_sample(const InvGammaParams& p, Rng& rng) {
    return 1.0 / rng.gamma(p.alpha, p.beta);
}

}  // namespace evireg
