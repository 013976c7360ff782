#include "seqrac/protocol.h"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace seqrac {

ProtocolSpec ProtocolSpec::optimal(double eta, double visibility) {
    return ProtocolSpec{optimal_preparations(), bob_instrument(eta), charlie_measurements(), visibility};
}

double JointDistribution::bob_marginal(int prep, int y, int z, int b) const {
    return (*this)(prep, y, z, b, 0) + (*this)(prep, y, z, b, 1);
}

double JointDistribution::charlie_marginal(int prep, int y, int z, int c) const {
    return (*this)(prep, y, z, 0, c) + (*this)(prep, y, z, 1, c);
}

std::uint64_t CountTable::setting_total(int prep, int y, int z) const {
    std::uint64_t total = 0;
    for (int b = 0; b < 2; b++) {
        for (int c = 0; c < 2; c++) {
            total += (*this)(prep, y, z, b, c);
        }
    }
    return total;
}

JointDistribution exact_distribution(const ProtocolSpec &spec) {
    PreparationSet noisy = spec.preparations.with_visibility(spec.visibility);
    JointDistribution dist;
    for (int prep = 0; prep < 4; prep++) {
        const Operator2 &rho = noisy.at(prep).op();
        for (int y = 0; y < 2; y++) {
            for (int b = 0; b < 2; b++) {
                Operator2 post = spec.instrument.apply(y, b, rho);
                for (int z = 0; z < 2; z++) {
                    for (int c = 0; c < 2; c++) {
                        double p = (spec.measurements.effect(z, c) * post).trace().real();
                        dist(prep, y, z, b, c) = std::max(0.0, p);
                    }
                }
            }
        }
    }
    return dist;
}

QubitState average_post_measurement_state(const ProtocolSpec &spec, int prep) {
    Operator2 rho = spec.preparations.with_visibility(spec.visibility).at(prep).op();
    Operator2 total;
    for (int y = 0; y < 2; y++) {
        for (int b = 0; b < 2; b++) {
            total += spec.instrument.apply(y, b, rho);
        }
    }
    return QubitState::from_operator(total * 0.5);
}

std::uint64_t splitmix64(std::uint64_t state) {
    std::uint64_t z = state + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

std::uint64_t draw_binomial(std::mt19937_64 &rng, std::uint64_t trials, double p) {
    if (trials == 0 || p <= 0.0) {
        return 0;
    }
    if (p >= 1.0) {
        return trials;
    }
    return std::binomial_distribution<std::uint64_t>(trials, p)(rng);
}

}  // namespace

CountTable sample_counts(const ProtocolSpec &spec, std::uint64_t events_per_setting, std::uint64_t seed) {
    if (events_per_setting == 0) {
        throw std::invalid_argument("events_per_setting must be positive");
    }
    JointDistribution dist = exact_distribution(spec);
    CountTable table;
    table.events_per_setting = events_per_setting;
    for (int prep = 0; prep < 4; prep++) {
        for (int y = 0; y < 2; y++) {
            for (int z = 0; z < 2; z++) {
                for (int b = 0; b < 2; b++) {
                    auto block = static_cast<std::uint64_t>(block_index(prep, y, z, b));
                    std::mt19937_64 rng(splitmix64(seed + (block + 1) * 0x9E3779B97F4A7C15ULL));
                    std::poisson_distribution<std::uint64_t> incident(static_cast<double>(events_per_setting));
                    std::uint64_t total = incident(rng);
                    double p0 = dist(prep, y, z, b, 0);
                    double p1 = dist(prep, y, z, b, 1);
                    std::uint64_t n0 = draw_binomial(rng, total, p0);
                    double rest = 1.0 - p0;
                    std::uint64_t n1 = rest > 0.0 ? draw_binomial(rng, total - n0, std::min(1.0, p1 / rest)) : 0;
                    table(prep, y, z, b, 0) = n0;
                    table(prep, y, z, b, 1) = n1;
                }
            }
        }
    }
    return table;
}

JointDistribution empirical_distribution(const CountTable &table) {
    JointDistribution dist;
    for (int prep = 0; prep < 4; prep++) {
        for (int y = 0; y < 2; y++) {
            for (int z = 0; z < 2; z++) {
                std::uint64_t total = table.setting_total(prep, y, z);
                if (total == 0) {
                    throw std::invalid_argument("no events recorded for setting x=" + std::to_string(prep) +
                                                " y=" + std::to_string(y) + " z=" + std::to_string(z));
                }
                for (int b = 0; b < 2; b++) {
                    for (int c = 0; c < 2; c++) {
                        dist(prep, y, z, b, c) = static_cast<double>(table(prep, y, z, b, c)) / total;
                    }
                }
            }
        }
    }
    return dist;
}

}  // namespace seqrac
