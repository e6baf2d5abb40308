#include "evireg/evidential_weibull.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "evireg/mc_validation.hpp"
#include "evireg/quadrature.hpp"
#include "evireg/rng.hpp"

using namespace evireg;

TEST(MarginalLikelihood, LomaxReduction) {
    // k = 1 collapses to the Lomax density alpha beta^alpha / (y + beta)^(alpha+1).
    EXPECT_NEAR(marginal_likelihood(1.0, 1.0, {1.0, 1.0}), 0.25, 1e-15);
    for (double y : {0.1, 0.9, 2.7}) {
        const EvidentialParams ev{3.4, 1.7};
        const double lomax = ev.alpha * std::pow(ev.beta, ev.alpha) /
                             std::pow(y + ev.beta, ev.alpha + 1.0);
        EXPECT_NEAR(marginal_likelihood(y, 1.0, ev), lomax, 1e-12 * lomax);
    }
}

TEST(MarginalLikelihood, DirectSubstitution) {
    EXPECT_NEAR(marginal_likelihood(1.0, 2.0, {3.0, 2.0}), 48.0 / 81.0, 1e-14);
}

TEST(MarginalLikelihood, MatchesQuadratureOracle) {
    const double value = marginal_likelihood(0.7, 1.254, {3.2, 0.9});
    const double oracle = quadrature_marginal(0.7, 1.254, {3.2, 0.9});
    EXPECT_NEAR(value, oracle, 1e-8 * oracle);
}

TEST(MarginalLikelihood, DomainErrors) {
    EXPECT_THROW(marginal_likelihood(-0.1, 1.0, {3.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(marginal_likelihood(0.0, 0.8, {3.0, 1.0}), std::invalid_argument);
    // y = 0 is allowed for k >= 1.
    EXPECT_NEAR(marginal_likelihood(0.0, 1.0, {3.0, 2.0}), 1.5, 1e-12);
    EXPECT_DOUBLE_EQ(marginal_likelihood(0.0, 1.5, {3.0, 2.0}), 0.0);
}

TEST(MarginalLikelihood, IntegratesToOneOverY) {
    for (double k : {1.0, 1.254, 1.6}) {
        for (double alpha : {2.5, 4.0}) {
            for (double beta : {0.5, 2.0}) {
                EvidentialParams ev{alpha, beta};
                auto r = integrate_zero_to_inf(
                    [&](double y) { return marginal_likelihood(y, k, ev); }, 1e-9);
                EXPECT_NEAR(r.value, 1.0, 1e-6)
                    << "k=" << k << " a=" << alpha << " b=" << beta;
            }
        }
    }
}

TEST(Nll, MatchesNegLogMarginal) {
    const double y = 0.8, k = 1.3;
    const EvidentialParams ev{3.1, 0.7};
    EXPECT_NEAR(nll(y, k, ev), -std::log(marginal_likelihood(y, k, ev)), 1e-12);
    EXPECT_NEAR(nll(1.0, 1.0, {1.0, 1.0}), std::log(4.0), 1e-13);
}

TEST(Nll, CorrectedLogTermRegressionLock) {
    // The un-logged final term (alpha+1)(y^k + beta) would give 4 at this
    // point; the corrected (alpha+1) ln(y^k + beta) form must match the
    // quadrature oracle instead.
    const double y = 1.0, k = 1.0;
    const EvidentialParams ev{1.0, 1.0};
    const double unlogged_form = -(std::log(ev.alpha) + std::log(k) +
                                   ev.alpha * std::log(ev.beta) -
                                   (ev.alpha + 1.0) * (std::pow(y, k) + ev.beta));
    EXPECT_NEAR(unlogged_form, 4.0, 1e-14);
    const double oracle_nll = -std::log(quadrature_marginal(y, k, ev));
    EXPECT_NEAR(nll(y, k, ev), oracle_nll, 1e-8);
    EXPECT_GT(std::abs(unlogged_form - oracle_nll), 2.0);
}

TEST(Nll, BatchAdditivity) {
    const EvidentialParams ev{2.6, 1.2};
    const double single = point_loss(0.9, 1.4, ev, 0.0);
    std::vector<std::pair<double, EvidentialParams>> batch{{0.9, ev}, {0.9, ev}};
    EXPECT_NEAR(total_loss(batch, 1.4, 0.0), single, 1e-14);
}

TEST(MeanPrediction, ClosedFormReductions) {
    // k = 1: Z = beta / (alpha - 1).
    EXPECT_NEAR(mean_prediction(1.0, {3.0, 4.0}), 2.0, 1e-12);
    EXPECT_NEAR(mean_prediction(1.0, {2.5, 3.0}), 2.0, 1e-12);
    // Frozen from Gamma(1.5) Gamma(2.5) / Gamma(3).
    EXPECT_NEAR(mean_prediction(2.0, {3.0, 1.0}), 0.5890486225480862, 1e-12);
}

TEST(MeanPrediction, MonteCarloOracle) {
    // Z-mean over draws lambda = theta^(1/k), theta ~ InvGamma(3, 1).
    const EvidentialParams ev{3.0, 1.0};
    const double k = 2.0;
    Rng rng(21);
    const InvGammaParams prior{ev.alpha, ev.beta};
    const double g1 = std::exp(log_gamma(1.0 + 1.0 / k));
    double sum = 0.0;
    const int n = 1'000'000;
    for (int i = 0; i < n; ++i) {
        sum += g1 * std::pow(inv_gamma_sample(prior, rng), 1.0 / k);
    }
    EXPECT_NEAR(sum / n, mean_prediction(k, ev), 0.01 * mean_prediction(k, ev));
}

TEST(MeanPrediction, UndefinedMomentError) {
    EXPECT_THROW(mean_prediction(0.3, {2.5, 1.0}), std::domain_error);  // 1/k > alpha
}

TEST(MeanPrediction, EqualsIntegralOfYAgainstMarginal) {
    for (double k : {1.0, 1.6}) {
        for (double alpha : {2.5, 4.0}) {
            EvidentialParams ev{alpha, 1.3};
            auto r = integrate_zero_to_inf(
                [&](double y) { return y * marginal_likelihood(y, k, ev); }, 1e-9);
            const double z = mean_prediction(k, ev);
            EXPECT_NEAR(r.value, z, 1e-4 * z) << "k=" << k << " a=" << alpha;
        }
    }
}

TEST(PredictiveVariance, InverseGammaReduction) {
    // k = 1: Var = beta^2 / ((alpha-1)^2 (alpha-2)).
    EXPECT_NEAR(predictive_variance(1.0, {4.0, 2.0}), 4.0 / 18.0, 1e-12);
}

TEST(PredictiveVariance, MonteCarloOracle) {
    const EvidentialParams ev{3.0, 2.0};
    const double k = 1.2;
    Rng rng(31);
    const InvGammaParams prior{ev.alpha, ev.beta};
    const double g1 = std::exp(log_gamma(1.0 + 1.0 / k));
    const int n = 1'000'000;
    std::vector<double> z(n);
    double s1 = 0.0;
    for (auto& v : z) {
        v = g1 * std::pow(inv_gamma_sample(prior, rng), 1.0 / k);
        s1 += v;
    }
    const double mean = s1 / n;
    double s2 = 0.0;
    for (double v : z) s2 += (v - mean) * (v - mean);
    const double mc_var = s2 / (n - 1);
    const double analytic = predictive_variance(k, ev);
    EXPECT_NEAR(mc_var, analytic, 0.03 * analytic);
}

TEST(PredictiveVariance, InfiniteFlagAtMomentBoundary) {
    // 2/k = 5 > alpha = 2.5: second moment does not exist.
    const PredictiveSummary s = predictive_summary(0.4, {2.5, 1.0});
    EXPECT_TRUE(std::isinf(s.variance));
    EXPECT_TRUE(std::isfinite(s.mean));
    EXPECT_THROW(predictive_variance(0.3, {2.5, 1.0}), std::domain_error);
}

TEST(PredictiveVariance, SummaryInvariants) {
    for (double k : {1.0, 1.254, 1.6, 2.0}) {
        for (double alpha : {2.2, 3.0, 6.0}) {
            for (double beta : {0.4, 1.0, 5.0}) {
                const PredictiveSummary s = predictive_summary(k, {alpha, beta});
                ASSERT_TRUE(std::isfinite(s.variance));
                EXPECT_GE(s.variance, 0.0);
                EXPECT_NEAR(s.variance, s.second_moment - s.mean * s.mean,
                            1e-10 * std::abs(s.second_moment));
            }
        }
    }
}

TEST(PredictiveVariance, MonotoneInBetaAtFixedAlphaK) {
    for (double k : {1.0, 1.6}) {
        double prev = 0.0;
        for (double beta : {0.5, 1.0, 2.0, 4.0}) {
            const double v = predictive_variance(k, {3.0, beta});
            EXPECT_GT(v, prev);
            prev = v;
        }
    }
}

TEST(RegLoss, DirectCases) {
    EXPECT_NEAR(reg_loss(1.0, 0.5, {2.0, 4.0}), 0.25, 1e-15);
    EXPECT_DOUBLE_EQ(reg_loss(0.7, 0.7, {2.4, 1.0}), 0.0);
    // Linearity in alpha.
    EXPECT_NEAR(reg_loss(1.0, 0.5, {4.0, 4.0}), 2.0 * reg_loss(1.0, 0.5, {2.0, 4.0}),
                1e-15);
}

TEST(TotalLoss, Arithmetic) {
    const EvidentialParams ev{2.6, 1.2};
    const double k = 1.3;
    std::vector<std::pair<double, EvidentialParams>> batch{{0.9, ev}};
    // c = 0 is pure NLL.
    EXPECT_NEAR(total_loss(batch, k, 0.0), nll(0.9, k, ev), 1e-14);
    const double z = mean_prediction(k, ev);
    EXPECT_NEAR(total_loss(batch, k, 0.1), nll(0.9, k, ev) + 0.1 * reg_loss(0.9, z, ev),
                1e-14);
    std::vector<std::pair<double, EvidentialParams>> empty;
    EXPECT_THROW(total_loss(empty, k, 0.0), std::invalid_argument);
}

TEST(LossGradients, StationaryAndDirectPoints) {
    const auto g = loss_gradients(1.0, 1.0, {1.0, 1.0}, 0.0);
    EXPECT_NEAR(g.d_beta, 0.0, 1e-15);
    EXPECT_NEAR(g.d_alpha, -1.0 + std::log(2.0), 1e-14);
}

TEST(LossGradients, MatchesFiniteDifferences) {
    const double y = 0.8, k = 1.3, c = 0.5;
    const auto grad = loss_gradients(y, k, {3.1, 0.7}, c);
    auto f = [&](std::span<const double> p) {
        return point_loss(y, k, {p[0], p[1]}, c);
    };
    const std::array<double, 2> point{3.1, 0.7};
    const std::array<double, 2> analytic{grad.d_alpha, grad.d_beta};
    EXPECT_LT(grad_check(f, point, analytic, 1e-5), 1e-6);
}

TEST(LossGradients, HundredRandomPointsAgainstFiniteDifferences) {
    Rng rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        const double y = 0.05 + 3.0 * rng.uniform();
        const double k = 0.9 + 1.3 * rng.uniform();
        const double alpha = 2.05 + 4.0 * rng.uniform();
        const double beta = 0.2 + 3.0 * rng.uniform();
        const double c = rng.uniform();
        const auto grad = loss_gradients(y, k, {alpha, beta}, c);
        auto f = [&](std::span<const double> p) {
            return point_loss(y, k, {p[0], p[1]}, c);
        };
        const std::array<double, 2> point{alpha, beta};
        const std::array<double, 2> analytic{grad.d_alpha, grad.d_beta};
        EXPECT_LT(grad_check(f, point, analytic, 1e-5), 1e-5)
            << "y=" << y << " k=" << k << " a=" << alpha << " b=" << beta
            << " c=" << c;
    }
}

TEST(EvidentialParams, Validation) {
    EXPECT_THROW(EvidentialParams(0.0, 1.0), std::invalid_argument);
    EXPECT_THROW(EvidentialParams(3.0, -1.0), std::invalid_argument);
    EXPECT_THROW(EvidentialParams(std::numeric_limits<double>::infinity(), 1.0),
                 std::invalid_argument);
}
