#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "evireg/evidential_weibull.hpp"  // PredictiveSummary
#include "evireg/special_functions.hpp"

namespace evireg {

/// Normal-Inverse-Gamma evidential parameters of the benchmark head.
/// alpha in (0, 1] is accepted for evaluating the marginal; the alpha > 1
/// constraint needed for finite predictive variance is guaranteed by the
/// head transform.
struct NigParams {
    double gamma;
    double nu;
    double alpha;
    double beta;

    NigParams(double gamma_, double nu_, double alpha_, double beta_)
        : gamma(gamma_), nu(nu_), alpha(alpha_), beta(beta_) {
        if (!std::isfinite(gamma)) {
            throw std::invalid_argument("NigParams: gamma must be finite");
        }
        if (!(nu > 0.0) || !std::isfinite(nu)) {
            throw std::invalid_argument("NigParams: nu must be finite and > 0");
        }
        if (!(alpha > 0.0) || !std::isfinite(alpha)) {
            throw std::invalid_argument("NigParams: alpha must be finite and > 0");
        }
        if (!(beta > 0.0) || !std::isfinite(beta)) {
            throw std::invalid_argument("NigParams: beta must be finite and > 0");
        }
    }
};

/// Gradient of the single-point NIG loss w.r.t. (gamma, nu, alpha, beta).
struct NigGradient {
    double d_gamma;
    double d_nu;
    double d_alpha;
    double d_beta;
};

/// Negative log marginal likelihood of the NIG prior: the Student-t
/// St(y; gamma, beta (1 + nu) / (nu alpha), 2 alpha) evidence, written as
///   1/2 ln(pi/nu) - alpha ln Omega + (alpha + 1/2) ln(nu (y-gamma)^2 + Omega)
///   + ln Gamma(alpha) - ln Gamma(alpha + 1/2),   Omega = 2 beta (1 + nu).
inline double nig_nll(double y, const NigParams& p) {
    const double omega = 2.0 * p.beta * (1.0 + p.nu);
    const double resid = y - p.gamma;
    return 0.5 * std::log(kPi / p.nu) - p.alpha * std::log(omega) +
           (p.alpha + 0.5) * std::log(p.nu * resid * resid + omega) +
           log_gamma(p.alpha) - log_gamma(p.alpha + 0.5);
}

/// Evidence regularizer |y - gamma| * (2 nu + alpha).
inline double nig_reg(double y, const NigParams& p) {
    return std::abs(y - p.gamma) * (2.0 * p.nu + p.alpha);
}

/// Prediction mean gamma and epistemic variance beta / (nu (alpha - 1)).
/// The variance is flagged +infinity when alpha <= 1.
inline PredictiveSummary nig_predict(const NigParams& p) {
    if (!(p.alpha > 1.0)) {
        const double inf = std::numeric_limits<double>::infinity();
        return {p.gamma, inf, inf};
    }
    const double variance = p.beta / (p.nu * (p.alpha - 1.0));
    return {p.gamma, variance, p.gamma * p.gamma + variance};
}

/// Aleatoric variance estimate beta / (alpha - 1); +infinity when alpha <= 1.
inline double nig_aleatoric_variance(const NigParams& p) {
    if (!(p.alpha > 1.0)) {
        return std::numeric_limits<double>::infinity();
    }
    return p.beta / (p.alpha - 1.0);
}

/// Analytic gradient of nig_nll + c * nig_reg w.r.t. (gamma, nu, alpha, beta).
inline NigGradient nig_loss_gradients(double y, const NigParams& p, double c) {
    const double omega = 2.0 * p.beta * (1.0 + p.nu);
    const double resid = y - p.gamma;
    const double s = p.nu * resid * resid + omega;
    const double a_half = p.alpha + 0.5;

    double d_gamma = a_half * (-2.0 * p.nu * resid) / s;
    double d_nu = -0.5 / p.nu - p.alpha * (2.0 * p.beta) / omega +
                  a_half * (resid * resid + 2.0 * p.beta) / s;
    double d_alpha = -std::log(omega) + std::log(s) + digamma(p.alpha) -
                     digamma(p.alpha + 0.5);
    double d_beta = -p.alpha / p.beta + a_half * 2.0 * (1.0 + p.nu) / s;

    if (c != 0.0) {
        const double sign = resid > 0.0 ? 1.0 : (resid < 0.0 ? -1.0 : 0.0);
        d_gamma += c * (-sign * (2.0 * p.nu + p.alpha));
        d_nu += c * 2.0 * std::abs(resid);
        d_alpha += c * std::abs(resid);
    }
    return {d_gamma, d_nu, d_alpha, d_beta};
}

}  // namespace evireg
