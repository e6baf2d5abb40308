#include "evireg/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>

using evireg::integrate;
using evireg::integrate_real_line;
using evireg::integrate_zero_to_inf;

TEST(Quadrature, Polynomial) {
    auto r = integrate([](double x) { return x * x; }, 0.0, 3.0);
    EXPECT_NEAR(r.value, 9.0, 1e-12);
}

TEST(Quadrature, OscillatorySubdivides) {
    const double pi = 3.14159265358979323846;
    auto r = integrate([](double x) { return std::sin(10.0 * x); }, 0.0, 3.5 * pi);
    EXPECT_NEAR(r.value, (1.0 - std::cos(35.0 * pi)) / 10.0, 1e-10);
}

TEST(Quadrature, ZeroToInfExponential) {
    auto r = integrate_zero_to_inf([](double x) { return std::exp(-x); });
    EXPECT_NEAR(r.value, 1.0, 1e-10);
}

TEST(Quadrature, RealLineGaussian) {
    const double inv_sqrt_2pi = 0.3989422804014327;
    auto r = integrate_real_line(
        [&](double x) { return inv_sqrt_2pi * std::exp(-0.5 * x * x); });
    EXPECT_NEAR(r.value, 1.0, 1e-10);
}

TEST(Quadrature, ThrowsWhenPanelBudgetExhausted) {
    // A step discontinuity keeps the K15-G7 gap from closing within a
    // deliberately tiny panel budget.
    auto f = [](double x) { return x < 0.3333333 ? 0.0 : 1.0; };
    EXPECT_THROW(integrate(f, 0.0, 1.0, 1e-14, 8), std::runtime_error);
}
