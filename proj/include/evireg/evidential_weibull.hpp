#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>

#include "evireg/special_functions.hpp"

namespace evireg {

/// Inverse-gamma evidential parameters (alpha, beta) predicted by the
/// network head for theta = lambda^k. Values with alpha in (0, 2] are
/// accepted for evaluating densities and losses; the alpha > 2 prior
/// constraint is guaranteed by the head transform where predictions are
/// actually formed.
struct EvidentialParams {
    double alpha;
    double beta;

    EvidentialParams(double alpha_, double beta_) : alpha(alpha_), beta(beta_) {
        if (!(alpha > 0.0) || !std::isfinite(alpha)) {
            throw std::invalid_argument("EvidentialParams: alpha must be finite and > 0");
        }
        if (!(beta > 0.0) || !std::isfinite(beta)) {
            throw std::invalid_argument("EvidentialParams: beta must be finite and > 0");
        }
    }
};

/// Mean prediction, total predictive variance, and second moment of Z.
struct PredictiveSummary {
    double mean;
    double variance;
    double second_moment;
};

/// Gradient of the single-point total loss with respect to (alpha, beta).
struct EvidentialGradient {
    double d_alpha;
    double d_beta;
};

namespace detail {

inline void check_marginal_domain(double y, double k) {
    if (y < 0.0) {
        throw std::invalid_argument("marginal_likelihood: y must be >= 0");
    }
    if (y == 0.0 && k < 1.0) {
        throw std::invalid_argument(
            "marginal_likelihood: y = 0 is singular for shape k < 1");
    }
    if (!(k > 0.0)) {
        throw std::invalid_argument("marginal_likelihood: k must be > 0");
    }
}

// (k - 1) * ln y with the y = 0 edge resolved: 1 for k = 1, 0 for k > 1.
inline double log_y_power_term(double y, double k) {
    if (y == 0.0) {
        return k == 1.0 ? 0.0 : -std::numeric_limits<double>::infinity();
    }
    return (k - 1.0) * std::log(y);
}

}  // namespace detail

/// Log of the marginal likelihood p(y | alpha, beta, k) =
/// alpha k y^(k-1) beta^alpha / (y^k + beta)^(alpha+1).
inline double log_marginal_likelihood(double y, double k, const EvidentialParams& ev) {
    detail::check_marginal_domain(y, k);
    const double yk = std::pow(y, k);
    return std::log(ev.alpha) + std::log(k) + detail::log_y_power_term(y, k) +
           ev.alpha * std::log(ev.beta) - (ev.alpha + 1.0) * std::log(yk + ev.beta);
}

/// Marginal likelihood of y under the inverse-gamma evidential prior; the
/// closed form of the integral of Weibull(y | theta, k) against the prior
/// density over theta.
inline double marginal_likelihood(double y, double k, const EvidentialParams& ev) {
    return std::exp(log_marginal_likelihood(y, k, ev));
}

/// Negative log marginal likelihood for one observation. The last term is
/// (alpha + 1) * ln(y^k + beta), the log form consistent with the marginal
/// likelihood itself.
inline double nll(double y, double k, const EvidentialParams& ev) {
    return -log_marginal_likelihood(y, k, ev);
}

/// Mean prediction Z = Gamma(1 + 1/k) * Gamma(alpha - 1/k) / Gamma(alpha) * beta^(1/k),
/// evaluated in log space.
inline double mean_prediction(double k, const EvidentialParams& ev) {
    if (!(k > 0.0)) {
        throw std::invalid_argument("mean_prediction: k must be > 0");
    }
    const double inv_k = 1.0 / k;
    if (!(ev.alpha > inv_k)) {
        throw std::domain_error("mean_prediction: undefined moment, alpha <= 1/k");
    }
    return std::exp(log_gamma(1.0 + inv_k) + log_gamma(ev.alpha - inv_k) -
                    log_gamma(ev.alpha) + inv_k * std::log(ev.beta));
}

/// Mean, variance, and second moment of Z in one pass. The variance is
/// +infinity when only the first moment exists (1/k < alpha <= 2/k).
inline PredictiveSummary predictive_summary(double k, const EvidentialParams& ev) {
    const double inv_k = 1.0 / k;
    const double mean = mean_prediction(k, ev);
    if (!(ev.alpha > 2.0 * inv_k)) {
        const double inf = std::numeric_limits<double>::infinity();
        return {mean, inf, inf};
    }
    const double log_g1 = log_gamma(1.0 + inv_k);
    const double second = std::exp(2.0 * log_g1 + log_gamma(ev.alpha - 2.0 * inv_k) -
                                   log_gamma(ev.alpha) + 2.0 * inv_k * std::log(ev.beta));
    return {mean, second - mean * mean, second};
}

/// Total predictive uncertainty Var(Z); +infinity when 1/k < alpha <= 2/k.
inline double predictive_variance(double k, const EvidentialParams& ev) {
    return predictive_summary(k, ev).variance;
}

/// Regularization cost |y - z| * alpha / beta, z being the mean prediction.
inline double reg_loss(double y, double z, const EvidentialParams& ev) {
    return std::abs(y - z) * ev.alpha / ev.beta;
}

/// Single-point training loss nll + c * reg.
inline double point_loss(double y, double k, const EvidentialParams& ev, double c) {
    double loss = nll(y, k, ev);
    if (c != 0.0) {
        loss += c * reg_loss(y, mean_prediction(k, ev), ev);
    }
    return loss;
}

/// Batch-mean total loss over (y, ev) pairs.
inline double total_loss(std::span<const std::pair<double, EvidentialParams>> batch,
                         double k, double c) {
    if (c < 0.0) {
        throw std::invalid_argument("total_loss: c must be >= 0");
    }
    if (batch.empty()) {
        throw std::invalid_argument("total_loss: batch must be nonempty");
    }
    double sum = 0.0;
    for (const auto& [y, ev] : batch) {
        sum += point_loss(y, k, ev, c);
    }
    return sum / static_cast<double>(batch.size());
}

/// Analytic gradient of the single-point total loss with respect to
/// (alpha, beta). The regularizer's |y - Z| factor is differentiated through
/// Z with dZ/dalpha = Z (psi(alpha - 1/k) - psi(alpha)) and dZ/dbeta =
/// Z / (k beta); at y = Z the subgradient 0 is used for the kink.
inline EvidentialGradient loss_gradients(double y, double k, const EvidentialParams& ev,
                                         double c) {
    detail::check_marginal_domain(y, k);
    const double yk = std::pow(y, k);
    const double denom = yk + ev.beta;
    double d_alpha = -1.0 / ev.alpha - std::log(ev.beta) + std::log(denom);
    double d_beta = -ev.alpha / ev.beta + (ev.alpha + 1.0) / denom;
    if (c != 0.0) {
        const double z = mean_prediction(k, ev);
        const double err = y - z;
        const double sign = err > 0.0 ? 1.0 : (err < 0.0 ? -1.0 : 0.0);
        const double ratio = ev.alpha / ev.beta;
        const double dz_dalpha = z * (digamma(ev.alpha - 1.0 / k) - digamma(ev.alpha));
        const double dz_dbeta = z / (k * ev.beta);
        d_alpha += c * (-sign * dz_dalpha * ratio + std::abs(err) / ev.beta);
        d_beta += c * (-sign * dz_dbeta * ratio - std::abs(err) * ev.alpha / (ev.beta * ev.beta));
    }
    return {d_alpha, d_beta};
}

}  // namespace evireg
