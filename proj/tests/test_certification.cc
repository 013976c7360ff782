#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "seqrac/certification.h"
#include "seqrac/projective_bound.h"

using namespace seqrac;

namespace {

const double kSqrt2 = std::numbers::sqrt2;
const double kMaxW = (2.0 + kSqrt2) / 4.0;

// Bob and Charlie read sigma_z for both inputs; Alice encodes x0 along z.
ProtocolSpec classical_spec() {
    std::array<BlochVector, 4> preps{BlochVector{0, 0, 1}, {0, 0, 1}, {0, 0, -1}, {0, 0, -1}};
    Observable z = Observable::unbiased({0, 0, 1});
    return {PreparationSet::from_bloch(preps), Instrument::luders(z, z), MeasurementSet::from_observables(z, z), 1.0};
}

}  // namespace

TEST(ComputeWitnesses, UniformOutputsGiveHalf) {
    JointDistribution d;
    d.p.fill(0.25);
    WitnessPair w = compute_witnesses(d);
    EXPECT_DOUBLE_EQ(w.w_ab, 0.5);
    EXPECT_DOUBLE_EQ(w.w_ac, 0.5);
}

TEST(ComputeWitnesses, OptimalAtTableEightDegrees) {
    WitnessPair w = compute_witnesses(exact_distribution(ProtocolSpec::optimal(0.848)));
    EXPECT_NEAR(w.w_ab, (2 + std::sqrt(2.0) * 0.848) / 4, 1e-12);
    EXPECT_NEAR(w.w_ac, (4 + std::sqrt(2.0) + std::sqrt(2 - 2 * 0.848 * 0.848)) / 8, 1e-12);
    EXPECT_NEAR(w.w_ab, 0.799813, 5e-7);
    EXPECT_NEAR(w.w_ac, 0.770468, 5e-7);
    EXPECT_NEAR(w.w_ab, 0.799, 3 * 0.002);
    EXPECT_NEAR(w.w_ac, 0.765, 3 * 0.002);
}

TEST(ComputeWitnesses, ClassicalStrategyIsThreeQuarters) {
    WitnessPair w = compute_witnesses(exact_distribution(classical_spec()));
    EXPECT_NEAR(w.w_ab, 0.75, 1e-15);
    EXPECT_NEAR(w.w_ac, 0.75, 1e-15);
}

TEST(ComputeWitnesses, CountSigmaIsBinomial) {
    // Every (x, y) Bob term has 800 successes out of 1000; Charlie 600 of 1000.
    CountTable t;
    for (int x = 0; x < 4; x++) {
        for (int y = 0; y < 2; y++) {
            for (int z = 0; z < 2; z++) {
                int good = input_bit(x, y);
                int cgood = input_bit(x, z);
                t(x, y, z, good, cgood) = 240;
                t(x, y, z, good, 1 - cgood) = 160;
                t(x, y, z, 1 - good, cgood) = 60;
                t(x, y, z, 1 - good, 1 - cgood) = 40;
            }
        }
    }
    WitnessPair w = compute_witnesses(t);
    EXPECT_NEAR(w.w_ab, 0.8, 1e-15);
    EXPECT_NEAR(w.w_ac, 0.6, 1e-15);
    EXPECT_NEAR(w.sigma_ab, std::sqrt(0.8 * 0.2 / 1000.0 / 8.0), 1e-15);
    EXPECT_NEAR(w.sigma_ac, std::sqrt(0.6 * 0.4 / 1000.0 / 8.0), 1e-15);
}

TEST(BootstrapWitnesses, AgreesWithAnalyticSigma) {
    CountTable t = sample_counts(ProtocolSpec::optimal(0.7, 0.98), 20000, 3);
    WitnessPair a = compute_witnesses(t);
    WitnessPair b = bootstrap_witnesses(t, 400, 4);
    EXPECT_EQ(a.w_ab, b.w_ab);
    EXPECT_NEAR(b.sigma_ab / a.sigma_ab, 1.0, 0.2);
    EXPECT_NEAR(b.sigma_ac / a.sigma_ac, 1.0, 0.2);
    EXPECT_THROW(bootstrap_witnesses(t, 1, 4), std::invalid_argument);
}

TEST(IdealWitnessPair, Endpoints) {
    WitnessPair one = ideal_witness_pair(1.0);
    EXPECT_NEAR(one.w_ab, 0.853553, 5e-7);
    EXPECT_NEAR(one.w_ac, 0.676777, 5e-7);
    WitnessPair zero = ideal_witness_pair(0.0);
    EXPECT_NEAR(zero.w_ab, 0.5, 1e-15);
    EXPECT_NEAR(zero.w_ac, 0.853553, 5e-7);
}

TEST(IdealWitnessPair, TableTenDegrees) {
    WitnessPair w = ideal_witness_pair(0.766);
    EXPECT_NEAR(w.w_ab, 0.770822, 5e-7);
    EXPECT_NEAR(w.w_ac, 0.790416, 5e-7);
}

TEST(IdealWitnessPair, MatchesExactDistribution) {
    for (int k = 0; k <= 20; k++) {
        double eta = k / 20.0;
        WitnessPair a = ideal_witness_pair(eta);
        WitnessPair b = compute_witnesses(exact_distribution(ProtocolSpec::optimal(eta)));
        EXPECT_NEAR(a.w_ab, b.w_ab, 1e-12);
        EXPECT_NEAR(a.w_ac, b.w_ac, 1e-12);
    }
    EXPECT_THROW(ideal_witness_pair(1.5), std::invalid_argument);
}

TEST(OptimalTradeoff, Endpoints) {
    EXPECT_NEAR(optimal_tradeoff(kMaxW), 0.676777, 5e-7);
    EXPECT_NEAR(optimal_tradeoff(0.5), 0.853553, 5e-7);
}

TEST(OptimalTradeoff, IdealPairsLieOnCurve) {
    for (int k = 0; k <= 100; k++) {
        WitnessPair w = ideal_witness_pair(k / 100.0);
        EXPECT_LT(std::abs(optimal_tradeoff(w.w_ab) - w.w_ac), 1e-12);
    }
}

TEST(OptimalTradeoff, Domain) {
    EXPECT_THROW(optimal_tradeoff(0.9), std::domain_error);
    EXPECT_THROW(optimal_tradeoff(0.1), std::domain_error);
    EXPECT_NO_THROW(optimal_tradeoff(kMaxW + 1e-14));
}

TEST(CertifySharpness, TableRowOne) {
    SharpnessInterval I = certify_sharpness({0.853, 0.688, 0.002, 0.003});
    EXPECT_NEAR(I.eta_min, 0.9984, 5e-5);
    // The formula gives 0.99798; the table prints 1.00.
    EXPECT_NEAR(I.eta_max, 0.99798, 5e-6);
    EXPECT_NEAR(I.eta_max, 1.00, 0.005);
    EXPECT_FALSE(I.consistent);
    EXPECT_NEAR(I.sigma_min, 2 * kSqrt2 * 0.002, 1e-15);
}

TEST(CertifySharpness, TableEightDegrees) {
    SharpnessInterval I = certify_sharpness({0.799, 0.765, 0, 0});
    EXPECT_NEAR(I.eta_min, 0.8457, 5e-5);
    EXPECT_NEAR(I.eta_max, 0.8666, 5e-5);
    EXPECT_TRUE(I.consistent);
}

TEST(CertifySharpness, TableLastRow) {
    SharpnessInterval I = certify_sharpness({0.503, 0.850, 0, 0});
    EXPECT_NEAR(I.eta_min, 0.0085, 5e-5);
    EXPECT_NEAR(I.eta_max, 0.199494, 5e-6);
    EXPECT_NEAR(I.eta_max, 0.20, 0.005);
}

TEST(CertifySharpness, IdealPairsPinEta) {
    for (int k = 0; k <= 100; k++) {
        double eta = k / 100.0;
        SharpnessInterval I = certify_sharpness(ideal_witness_pair(eta));
        EXPECT_LT(std::abs(I.width()), 1e-9);
        EXPECT_LE(I.lower(), eta + 1e-12);
        EXPECT_GE(I.upper(), eta - 1e-12);
        EXPECT_TRUE(I.consistent);
    }
}

TEST(CertifySharpness, SigmaMaxMatchesFiniteDifference) {
    WitnessPair w{0.77, 0.78, 0.0, 0.003};
    double h = 1e-7;
    auto eta_max = [](double wac) { return certify_sharpness({0.77, wac, 0, 0}).eta_max; };
    double slope = (eta_max(w.w_ac + h) - eta_max(w.w_ac - h)) / (2 * h);
    EXPECT_NEAR(certify_sharpness(w).sigma_max, std::abs(slope) * 0.003, 1e-8);
}

TEST(CertifySharpness, EtaMaxDecreasesInWac) {
    double h = 1e-6;
    for (int k = 1; k < 100; k++) {
        double wac = 0.75 + (kMaxW - 0.75) * k / 100.0;
        double lo = certify_sharpness({0.5, wac - h, 0, 0}).eta_max;
        double hi = certify_sharpness({0.5, wac + h, 0, 0}).eta_max;
        EXPECT_LT((hi - lo) / (2 * h), 0.0) << "W_AC " << wac;
    }
}

TEST(CertifySharpness, EtaMinIncreasesInWab) {
    double prev = -1.0;
    for (int k = 0; k <= 50; k++) {
        double eta_min = certify_sharpness({0.5 + (kMaxW - 0.5) * k / 50.0, 0.7, 0, 0}).eta_min;
        EXPECT_GT(eta_min, prev);
        prev = eta_min;
    }
}

TEST(CertifySharpness, ClampsSuperQuantumWac) {
    SharpnessInterval I = certify_sharpness({0.6, 0.9, 0.0, 0.01});
    EXPECT_TRUE(I.radicand_clamped);
    EXPECT_EQ(I.eta_max, 0.0);
    EXPECT_EQ(I.sigma_max, std::numeric_limits<double>::infinity());
    EXPECT_FALSE(I.consistent);
    EXPECT_THROW(certify_sharpness({1.2, 0.5, 0, 0}), std::invalid_argument);
}

TEST(ProjectiveStrategy, SharpPauliReproducesEtaOne) {
    ProjectiveStrategy s;
    s.mixing[0] = s.mixing[1] = 1.0;
    s.overlap = 0.0;
    s.alice_angle[0] = std::numbers::pi / 4;
    s.alice_angle[1] = -std::numbers::pi / 4;
    WitnessPoint p = projective_strategy_witnesses(s);
    EXPECT_NEAR(p.w_ab, kMaxW, 1e-12);
    EXPECT_NEAR(p.w_ac, optimal_tradeoff(kMaxW), 1e-12);
}

TEST(ProjectiveBound, EndpointsCoincideWithOptimal) {
    EXPECT_NEAR(projective_bound(kMaxW), 0.676777, 5e-7);
    EXPECT_NEAR(projective_bound(0.5), 0.853553, 5e-7);
    EXPECT_NEAR(projective_bound(kMaxW), optimal_tradeoff(kMaxW), 1e-6);
    EXPECT_NEAR(projective_bound(0.5), optimal_tradeoff(0.5), 1e-6);
}

TEST(ProjectiveBound, GapInTheMiddle) {
    double gap = optimal_tradeoff(0.775) - projective_bound(0.775);
    EXPECT_GT(gap, 0.01);
    // Frozen from an independent free-angle Nelder-Mead prototype: the
    // envelope at W_AB = 0.734 reaches at least 0.7779.
    EXPECT_GE(projective_bound(0.734), 0.7779);
}

TEST(ProjectiveBound, NeverAboveOptimal) {
    for (int k = 0; k < 200; k++) {
        double w = 0.5 + (kMaxW - 0.5) * k / 199.0;
        EXPECT_LE(projective_bound(w), optimal_tradeoff(w) + 1e-9) << "W_AB " << w;
    }
}

TEST(ProjectiveBound, NonIncreasing) {
    double prev = 1.0;
    for (int k = 0; k <= 100; k++) {
        double v = projective_bound(0.5 + (kMaxW - 0.5) * k / 100.0);
        EXPECT_LE(v, prev + 1e-15);
        prev = v;
    }
}

TEST(ProjectiveBound, DominatesSampledStrategies) {
    // Every individual projective strategy lies under the envelope (up to the
    // optimizer's reach).
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; i++) {
        ProjectiveStrategy s;
        s.mixing[0] = u(rng);
        s.mixing[1] = u(rng);
        s.overlap = 2 * u(rng) - 1;
        s.alice_angle[0] = 2 * std::numbers::pi * u(rng);
        s.alice_angle[1] = 2 * std::numbers::pi * u(rng);
        WitnessPoint p = projective_strategy_witnesses(s);
        if (p.w_ab < 0.5) {
            continue;
        }
        EXPECT_LE(p.w_ac, projective_bound(p.w_ab) + 1e-4);
    }
}

TEST(ProjectiveBound, Domain) {
    EXPECT_THROW(projective_bound(0.4), std::domain_error);
    EXPECT_THROW(projective_bound(0.9), std::domain_error);
}
