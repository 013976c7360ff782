#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "seqrac/incompatibility.h"

using namespace seqrac;

namespace {

const double kSqrt2 = std::numbers::sqrt2;
const double kDmax = 2 * kSqrt2 - 2;

// Charlie bound integrand written out independently of the library.
double eq8(double eta, double w_ab, double w_ac) {
    double eta_min = kSqrt2 * (2 * w_ab - 1);
    double g = std::sqrt(1 - eta * eta);
    double t = std::min(1.0, eta_min / eta);
    double f = 2 * t * std::sqrt(1 - t * t);
    return (16 * w_ac - 8) / (1 + g + f * (1 - g)) - 2;
}

// Dense brute-force scan, reset to zero and capped like the library result.
double brute_force_b2(double w_ab, double w_ac, double lo, double hi, int points) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < points; i++) {
        double eta = lo + (hi - lo) * i / (points - 1);
        if (eta <= 0.0) {
            continue;
        }
        best = std::min(best, eq8(eta, w_ab, w_ac));
    }
    return std::min(std::max(0.0, best), kDmax);
}

}  // namespace

TEST(DegreeOfIncompatibility, Examples) {
    EXPECT_EQ(degree_of_incompatibility({0, 0, 1}, {0, 0, 1}), 0.0);
    EXPECT_NEAR(degree_of_incompatibility({1, 0, 0}, {0, 0, 1}), 0.8284271247, 1e-10);
    EXPECT_EQ(degree_of_incompatibility({0, 0, 0.6}, {0.6, 0, 0}), 0.0);
    EXPECT_NEAR(1.2 * kSqrt2 - 2, -0.3029, 1e-4);
    EXPECT_THROW(degree_of_incompatibility({0, 0, 1.1}, {0, 0, 1}), std::invalid_argument);
}

TEST(DegreeOfIncompatibility, BoundedByMaximum) {
    std::mt19937_64 rng(41);
    std::normal_distribution<double> g(0, 1);
    for (int i = 0; i < 1000; i++) {
        BlochVector a{g(rng), g(rng), g(rng)};
        BlochVector b{g(rng), g(rng), g(rng)};
        double d = degree_of_incompatibility(a.normalized(), b.normalized());
        EXPECT_GE(d, 0.0);
        EXPECT_LE(d, max_degree_of_incompatibility() + 1e-9);
    }
}

TEST(BoundB1, Examples) {
    EXPECT_EQ(bound_b1(0.75), 0.0);
    EXPECT_NEAR(bound_b1((2 + kSqrt2) / 4), kDmax, 1e-12);
    EXPECT_NEAR(bound_b1(0.853), 0.824, 1e-12);
    EXPECT_EQ(bound_b1(0.6), 0.0);
    EXPECT_THROW(bound_b1(1.5), std::invalid_argument);
}

TEST(BoundB2, ExactSharpData) {
    WitnessPair w = ideal_witness_pair(1.0);
    IncompatibilityResult r = bound_b2(w, certify_sharpness(w));
    EXPECT_NEAR(r.d_charlie, 0.828427, 1e-6);
    EXPECT_NEAR(r.d_charlie, kDmax, 1e-9);
    EXPECT_NEAR(r.d_bob, kDmax, 1e-12);
    EXPECT_EQ(r.assumptions, (std::vector<std::string>{"unbiased_bob", "eta0_eq_eta1"}));
}

TEST(BoundB2, SmallEtaLimitRecoversB1) {
    // f, g -> 1 as eta -> 0 with eta_min / eta fixed at 1/sqrt2.
    double eta = 1e-6;
    double eta_min = eta / kSqrt2;
    double w_ac = 0.82;
    EXPECT_NEAR(charlie_bound_at(eta, w_ac, eta_min), 8 * w_ac - 6, 1e-9);
}

TEST(BoundB2, TableEightDegrees) {
    WitnessPair w{0.799, 0.765, 0.002, 0.002};
    SharpnessInterval I;
    I.eta_min = 0.845;
    I.eta_max = 0.867;
    IncompatibilityResult r = bound_b2(w, I);
    double oracle = 1e9;
    for (int i = 0; i < 1000000; i++) {
        double eta = 0.845 + 0.022 * i / 999999.0;
        oracle = std::min(oracle, charlie_bound_at(eta, 0.765, 0.845));
    }
    EXPECT_NEAR(r.d_charlie, std::max(0.0, oracle), 1e-8);
    EXPECT_GE(r.eta_argmin, 0.845);
    EXPECT_LE(r.eta_argmin, 0.867);
}

TEST(BoundB2, MatchesBruteForceOnRandomPairs) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0, 1);
    const double w_max = (2 + kSqrt2) / 4;
    for (int i = 0; i < 50; i++) {
        double w_ab = 0.5 + (w_max - 0.5) * u(rng);
        double w_ac = 0.5 + (optimal_tradeoff(w_ab) - 0.5) * u(rng);
        WitnessPair w{w_ab, w_ac, 0, 0};
        SharpnessInterval I = certify_sharpness(w);
        IncompatibilityResult r = bound_b2(w, I);
        double oracle = brute_force_b2(w_ab, w_ac, I.lower(), I.upper(), 1000000);
        EXPECT_NEAR(r.d_charlie, oracle, 1e-8) << "W = (" << w_ab << ", " << w_ac << ")";
    }
}

TEST(BoundB2, NeverBelowB1AwayFromZero) {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 200; i++) {
        double eta = 0.2 + 0.8 * u(rng);
        WitnessPair w = ideal_witness_pair(eta);
        w.w_ac -= 0.01 * u(rng);
        IncompatibilityResult r = bound_b2(w, certify_sharpness(w));
        EXPECT_GE(r.d_charlie, bound_b1(w.w_ac) - 1e-9);
    }
}

TEST(BoundB2, BobZeroCrossingAtInverseRootTwo) {
    // d_bob = max(0, 2 sqrt2 eta - 2) on ideal data.
    for (int k = 0; k <= 100; k++) {
        double eta = k / 100.0;
        WitnessPair w = ideal_witness_pair(eta);
        IncompatibilityResult r = bound_b2(w, certify_sharpness(w));
        EXPECT_NEAR(r.d_bob, std::max(0.0, 2 * kSqrt2 * eta - 2), 1e-12);
    }
    double below = 1 / kSqrt2 - 1e-6;
    double above = 1 / kSqrt2 + 1e-6;
    EXPECT_EQ(bound_b2(ideal_witness_pair(below), certify_sharpness(ideal_witness_pair(below))).d_bob, 0.0);
    EXPECT_GT(bound_b2(ideal_witness_pair(above), certify_sharpness(ideal_witness_pair(above))).d_bob, 0.0);
}

TEST(BoundB2, IdealCharlieStaysNearMaximum) {
    // Qualitative shape of the Charlie bars: high for every sharpness.
    for (int k = 1; k <= 20; k++) {
        WitnessPair w = ideal_witness_pair(k / 20.0);
        EXPECT_NEAR(bound_b2(w, certify_sharpness(w)).d_charlie, kDmax, 1e-6);
    }
}

TEST(BoundB2, ClassicalPointFollowsEq8) {
    // I = [1/sqrt2, 0.9102]; the minimum sits at eta_max and is slightly positive.
    WitnessPair w{0.75, 0.75, 0, 0};
    SharpnessInterval I = certify_sharpness(w);
    IncompatibilityResult r = bound_b2(w, I);
    EXPECT_EQ(r.d_bob, 0.0);
    EXPECT_NEAR(r.d_charlie, brute_force_b2(0.75, 0.75, I.lower(), I.upper(), 1000000), 1e-8);
    EXPECT_NEAR(r.d_charlie, 0.01278, 1e-5);
    EXPECT_NEAR(r.eta_argmin, I.eta_max, 1e-9);
}

TEST(BoundB2, InconsistentIntervalUsesSortedBounds) {
    WitnessPair w{0.853, 0.688, 0.002, 0.003};
    SharpnessInterval I = certify_sharpness(w);
    ASSERT_FALSE(I.consistent);
    IncompatibilityResult r = bound_b2(w, I);
    EXPECT_GE(r.eta_argmin, I.lower());
    EXPECT_LE(r.eta_argmin, I.upper());
    EXPECT_LE(r.d_charlie, kDmax + 1e-9);
}

TEST(BoundB2, CapsSuperQuantumData) {
    WitnessPair w{0.6, 0.86, 0, 0};
    IncompatibilityResult r = bound_b2(w, certify_sharpness(w));
    EXPECT_LE(r.d_charlie, kDmax + 1e-12);
}

TEST(BoundB2, RejectsNonFiniteInterval) {
    SharpnessInterval I;
    I.eta_max = std::nan("");
    EXPECT_THROW(bound_b2({0.8, 0.7, 0, 0}, I), std::invalid_argument);
}
