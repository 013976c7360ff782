#ifndef SEQRAC_STRATEGIES_H
#define SEQRAC_STRATEGIES_H

#include <array>
#include <optional>

#include "seqrac/qubit.h"

namespace seqrac {

/// Alice's input (x0, x1) packed as 2*x0 + x1.
constexpr int prep_index(int x0, int x1) { return 2 * x0 + x1; }
/// Bit y of Alice's input, i.e. x_y.
constexpr int input_bit(int prep, int y) { return y == 0 ? (prep >> 1) & 1 : prep & 1; }

/// Alice's four preparations, indexed by prep_index(x0, x1).
class PreparationSet {
   public:
    explicit PreparationSet(const std::array<QubitState, 4> &states) : states_(states) {}
    static PreparationSet from_bloch(const std::array<BlochVector, 4> &vectors);

    const QubitState &operator()(int x0, int x1) const { return states_[prep_index(x0, x1)]; }
    const QubitState &at(int prep) const { return states_[prep]; }

    /// Depolarized copy: rho -> v rho + (1 - v) 1/2.
    PreparationSet with_visibility(double visibility) const;

   private:
    std::array<QubitState, 4> states_;
};

/// Bob's two binary-outcome instruments, one Kraus operator per (y, b).
class Instrument {
   public:
    using KrausTable = std::array<std::array<Operator2, 2>, 2>;

    /// Validates sum_b K^dag K == 1 for each y.
    static Instrument from_kraus(const KrausTable &kraus);
    /// Lueders instrument: K_{b|y} = sqrt((1 + (-1)^b B_y)/2).
    static Instrument luders(const Observable &b0, const Observable &b1);

    const Operator2 &kraus(int y, int b) const { return kraus_[y][b]; }
    /// K^dag K for (y, b).
    Operator2 effect(int y, int b) const;
    /// Unnormalized post-measurement operator K rho K^dag.
    Operator2 apply(int y, int b, const Operator2 &rho) const;

   private:
    explicit Instrument(const KrausTable &kraus) : kraus_(kraus) {}
    KrausTable kraus_;
};

/// Charlie's two binary POVMs, effects indexed (z, c).
class MeasurementSet {
   public:
    using EffectTable = std::array<std::array<Operator2, 2>, 2>;

    static MeasurementSet from_effects(const EffectTable &effects);
    static MeasurementSet from_observables(const Observable &c0, const Observable &c1);

    const Operator2 &effect(int z, int c) const { return effects_[z][c]; }

   private:
    explicit MeasurementSet(const EffectTable &effects) : effects_(effects) {}
    EffectTable effects_;
};

/// The four pure xz-plane states with Bloch vectors ((-1)^x0, 0, (-1)^x1)/sqrt(2).
PreparationSet optimal_preparations();

/// Bob's optimal instrument: B_0 = eta sigma_x + alpha_0, B_1 = eta sigma_z + alpha_1.
/// Biases default to zero. Throws std::invalid_argument for eta outside [0, 1] or
/// |alpha_y| > 1 - eta.
Instrument bob_instrument(double eta, std::optional<std::array<double, 2>> biases = std::nullopt);

/// C_0 = sigma_x, C_1 = sigma_z.
MeasurementSet charlie_measurements();

/// eta = cos(4 theta) for a half-wave-plate angle theta in [0, 22.5] degrees.
double eta_from_waveplate(double theta_degrees);

}  // namespace seqrac

#endif
