#include <gtest/gtest.h>

#include <cmath>

#include "seqrac/optimize.h"

using namespace seqrac;

TEST(GoldenSection, Parabola) {
    auto m = opt::golden_section([](double x) { return (x - 0.3) * (x - 0.3); }, 0.0, 1.0, 1e-10);
    EXPECT_NEAR(m.x, 0.3, 1e-9);
    EXPECT_NEAR(m.value, 0.0, 1e-18);
}

TEST(GoldenSection, MinimumAtEdge) {
    auto m = opt::golden_section([](double x) { return x; }, 0.2, 0.7, 1e-10);
    EXPECT_EQ(m.x, 0.2);
}

TEST(GoldenSection, DegenerateInterval) {
    auto m = opt::golden_section([](double x) { return std::cos(x); }, 1.0, 1.0, 1e-10);
    EXPECT_EQ(m.x, 1.0);
}

TEST(NelderMead, Rosenbrock) {
    auto f = [](const std::array<double, 2> &p) {
        return 100 * std::pow(p[1] - p[0] * p[0], 2) + std::pow(1 - p[0], 2);
    };
    auto m = opt::nelder_mead<2>(f, {-1.2, 1.0}, 0.5, 1e-12, 20000);
    EXPECT_NEAR(m.x[0], 1.0, 1e-5);
    EXPECT_NEAR(m.x[1], 1.0, 1e-5);
}
