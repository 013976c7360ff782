#ifndef SEQRAC_PROTOCOL_H
#define SEQRAC_PROTOCOL_H

#include <array>
#include <cstdint>

#include "seqrac/strategies.h"

namespace seqrac {

/// Alice -> Bob -> Charlie. Visibility depolarizes Alice's preparations only.
struct ProtocolSpec {
    PreparationSet preparations;
    Instrument instrument;
    MeasurementSet measurements;
    double visibility = 1.0;

    /// Optimal preparations, Bob's unbiased instrument at sharpness eta, Charlie's
    /// sigma_x / sigma_z.
    static ProtocolSpec optimal(double eta, double visibility = 1.0);
};

/// Index of the (x, y, z, b, c) cell, x = prep_index(x0, x1); 64 cells total.
constexpr int cell_index(int prep, int y, int z, int b, int c) {
    return (((prep * 2 + y) * 2 + z) * 2 + b) * 2 + c;
}
/// Index of a sampling block (x, y, z, b); 32 blocks total.
constexpr int block_index(int prep, int y, int z, int b) {
    return ((prep * 2 + y) * 2 + z) * 2 + b;
}
inline constexpr int kCells = 64;
inline constexpr int kBlocks = 32;

/// p(b, c | x, y, z).
struct JointDistribution {
    std::array<double, kCells> p{};

    double operator()(int prep, int y, int z, int b, int c) const { return p[cell_index(prep, y, z, b, c)]; }
    double &operator()(int prep, int y, int z, int b, int c) { return p[cell_index(prep, y, z, b, c)]; }

    /// p(b | x, y, z) = sum_c p(b, c | x, y, z).
    double bob_marginal(int prep, int y, int z, int b) const;
    /// p(c | x, y, z) = sum_b p(b, c | x, y, z).
    double charlie_marginal(int prep, int y, int z, int c) const;
};

/// Detected events per (x, y, z, b, c). Each (x, y, z, b) is one equal-duration
/// block in which only Bob's output port b is monitored.
struct CountTable {
    std::array<std::uint64_t, kCells> counts{};
    std::uint64_t events_per_setting = 0;

    std::uint64_t operator()(int prep, int y, int z, int b, int c) const {
        return counts[cell_index(prep, y, z, b, c)];
    }
    std::uint64_t &operator()(int prep, int y, int z, int b, int c) { return counts[cell_index(prep, y, z, b, c)]; }

    /// Total detected over both port blocks of (x, y, z).
    std::uint64_t setting_total(int prep, int y, int z) const;

    bool operator==(const CountTable &) const = default;
};

/// p(b, c | x, y, z) = Tr(C_{c|z} K_{b|y} rho_x K_{b|y}^dag).
JointDistribution exact_distribution(const ProtocolSpec &spec);

/// (1/2) sum_{y,b} K_{b|y} rho_x K_{b|y}^dag for the visibility-degraded rho_x.
QubitState average_post_measurement_state(const ProtocolSpec &spec, int prep);

/// Shot-noise sample. Each of the 32 blocks draws its incident events from
/// Poisson(events_per_setting) and splits them multinomially into
/// {c = 0, c = 1, other port}. Block k uses an mt19937_64 seeded with
/// splitmix64(seed + (k + 1) * 0x9E3779B97F4A7C15), so results are independent
/// of evaluation order. Throws std::invalid_argument if events_per_setting == 0.
CountTable sample_counts(const ProtocolSpec &spec, std::uint64_t events_per_setting, std::uint64_t seed);

/// Relative frequencies n(b, c | x, y, z) / setting_total(x, y, z).
/// Throws std::invalid_argument if some setting has no events.
JointDistribution empirical_distribution(const CountTable &table);

std::uint64_t splitmix64(std::uint64_t state);

}  // namespace seqrac

#endif
