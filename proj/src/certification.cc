#include "seqrac/certification.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>

namespace seqrac {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

struct Tally {
    double successes = 0.0;
    double total = 0.0;
};

// successes / totals for the 8 (x, y) Bob terms and the 8 (x, z) Charlie terms.
struct WitnessTallies {
    std::array<Tally, 8> bob;
    std::array<Tally, 8> charlie;
};

template <typename CellValue>
WitnessTallies tally(CellValue &&cell) {
    WitnessTallies t;
    for (int prep = 0; prep < 4; prep++) {
        for (int y = 0; y < 2; y++) {
            for (int z = 0; z < 2; z++) {
                for (int b = 0; b < 2; b++) {
                    for (int c = 0; c < 2; c++) {
                        double v = cell(prep, y, z, b, c);
                        Tally &tb = t.bob[prep * 2 + y];
                        Tally &tc = t.charlie[prep * 2 + z];
                        tb.total += v;
                        tc.total += v;
                        if (b == input_bit(prep, y)) {
                            tb.successes += v;
                        }
                        if (c == input_bit(prep, z)) {
                            tc.successes += v;
                        }
                    }
                }
            }
        }
    }
    return t;
}

// Mean of the 8 success probabilities and its binomial standard error.
std::pair<double, double> average_rate(const std::array<Tally, 8> &terms, bool with_errors) {
    double mean = 0.0;
    double variance = 0.0;
    for (const Tally &t : terms) {
        if (t.total <= 0.0) {
            throw std::invalid_argument("empty setting in count table");
        }
        double p = t.successes / t.total;
        mean += p / 8.0;
        variance += p * (1.0 - p) / t.total / 64.0;
    }
    return {mean, with_errors ? std::sqrt(variance) : 0.0};
}

double snap_unit(double eta) {
    if (std::abs(eta) <= tol::kEtaSnap) {
        return 0.0;
    }
    if (std::abs(eta - 1.0) <= tol::kEtaSnap) {
        return 1.0;
    }
    return std::clamp(eta, 0.0, 1.0);
}

}  // namespace

WitnessPair compute_witnesses(const JointDistribution &dist) {
    // Each (x, y) term sums over z, b, c, so its total is 2; likewise for Charlie.
    WitnessTallies t = tally([&](int prep, int y, int z, int b, int c) { return dist(prep, y, z, b, c); });
    auto [w_ab, s_ab] = average_rate(t.bob, false);
    auto [w_ac, s_ac] = average_rate(t.charlie, false);
    return {w_ab, w_ac, s_ab, s_ac};
}

WitnessPair compute_witnesses(const CountTable &table) {
    // Convert to per-setting relative frequencies first so that port blocks of
    // unequal size are weighted as probabilities, then pool z (resp. y).
    JointDistribution freq = empirical_distribution(table);
    WitnessTallies t = tally([&](int prep, int y, int z, int b, int c) { return freq(prep, y, z, b, c); });
    WitnessTallies n = tally([&](int prep, int y, int z, int b, int c) {
        return static_cast<double>(table(prep, y, z, b, c));
    });
    for (size_t k = 0; k < 8; k++) {
        // Rescale probability mass to event counts so the binomial error sees N.
        double scale_b = n.bob[k].total / t.bob[k].total;
        double scale_c = n.charlie[k].total / t.charlie[k].total;
        t.bob[k] = {t.bob[k].successes * scale_b, n.bob[k].total};
        t.charlie[k] = {t.charlie[k].successes * scale_c, n.charlie[k].total};
    }
    auto [w_ab, s_ab] = average_rate(t.bob, true);
    auto [w_ac, s_ac] = average_rate(t.charlie, true);
    return {w_ab, w_ac, s_ab, s_ac};
}

WitnessPair bootstrap_witnesses(const CountTable &table, int resamples, std::uint64_t seed) {
    if (resamples < 2) {
        throw std::invalid_argument("bootstrap needs at least two resamples");
    }
    WitnessPair central = compute_witnesses(table);
    std::mt19937_64 rng(splitmix64(seed));
    double sum_ab = 0.0, sum_ac = 0.0, sq_ab = 0.0, sq_ac = 0.0;
    for (int r = 0; r < resamples; r++) {
        CountTable redraw = table;
        for (auto &n : redraw.counts) {
            n = n == 0 ? 0 : std::poisson_distribution<std::uint64_t>(static_cast<double>(n))(rng);
        }
        WitnessPair w = compute_witnesses(redraw);
        sum_ab += w.w_ab;
        sum_ac += w.w_ac;
        sq_ab += w.w_ab * w.w_ab;
        sq_ac += w.w_ac * w.w_ac;
    }
    double m = resamples;
    central.sigma_ab = std::sqrt(std::max(0.0, (sq_ab - sum_ab * sum_ab / m) / (m - 1.0)));
    central.sigma_ac = std::sqrt(std::max(0.0, (sq_ac - sum_ac * sum_ac / m) / (m - 1.0)));
    return central;
}

WitnessPair ideal_witness_pair(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("sharpness eta must lie in [0, 1]");
    }
    return {
        (2.0 + kSqrt2 * eta) / 4.0,
        (4.0 + kSqrt2 + std::sqrt(std::max(0.0, 2.0 - 2.0 * eta * eta))) / 8.0,
        0.0,
        0.0,
    };
}

double optimal_tradeoff(double w_ab) {
    double radicand = 16.0 * w_ab - 16.0 * w_ab * w_ab - 2.0;
    if (!(radicand >= -tol::kRadicand)) {
        throw std::domain_error("W_AB lies outside the quantum range [(2 - sqrt2)/4, (2 + sqrt2)/4]");
    }
    return (4.0 + kSqrt2 + std::sqrt(std::max(0.0, radicand))) / 8.0;
}

SharpnessInterval certify_sharpness(const WitnessPair &w) {
    if (!(w.w_ab >= 0.0 && w.w_ab <= 1.0 && w.w_ac >= 0.0 && w.w_ac <= 1.0)) {
        throw std::invalid_argument("witness values must lie in [0, 1]");
    }
    SharpnessInterval out;
    out.eta_min = snap_unit(kSqrt2 * (2.0 * w.w_ab - 1.0));
    out.sigma_min = 2.0 * kSqrt2 * w.sigma_ab;

    double radicand = (2.0 + kSqrt2 - 4.0 * w.w_ac) * (2.0 * w.w_ac - 1.0);
    if (radicand < 0.0) {
        out.radicand_clamped = radicand < -tol::kRadicand;
        radicand = 0.0;
    }
    double root = std::sqrt(radicand);
    out.eta_max = snap_unit(2.0 * root);
    // d eta_max / d W_AC = (8 + 2 sqrt2 - 16 W_AC) / sqrt(radicand)
    double slope_numerator = std::abs(8.0 + 2.0 * kSqrt2 - 16.0 * w.w_ac);
    if (w.sigma_ac == 0.0) {
        out.sigma_max = 0.0;
    } else if (root > 0.0) {
        out.sigma_max = slope_numerator / root * w.sigma_ac;
    } else {
        out.sigma_max = std::numeric_limits<double>::infinity();
    }
    out.consistent = out.eta_min <= out.eta_max + tol::kEtaSnap;
    return out;
}

}  // namespace seqrac
