#include "seqrac/strategies.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace seqrac {

PreparationSet PreparationSet::from_bloch(const std::array<BlochVector, 4> &vectors) {
    return PreparationSet({
        bloch_to_state(vectors[0]),
        bloch_to_state(vectors[1]),
        bloch_to_state(vectors[2]),
        bloch_to_state(vectors[3]),
    });
}

PreparationSet PreparationSet::with_visibility(double visibility) const {
    if (!(visibility >= 0.0 && visibility <= 1.0)) {
        throw std::invalid_argument("visibility must lie in [0, 1]");
    }
    std::array<BlochVector, 4> shrunk;
    for (int k = 0; k < 4; k++) {
        shrunk[k] = states_[k].bloch() * visibility;
    }
    return from_bloch(shrunk);
}

Instrument Instrument::from_kraus(const KrausTable &kraus) {
    for (int y = 0; y < 2; y++) {
        Operator2 total = kraus[y][0].adjoint() * kraus[y][0] + kraus[y][1].adjoint() * kraus[y][1];
        if (total.max_abs_diff(Operator2::identity()) > tol::kKraus) {
            throw std::invalid_argument("Kraus operators are not complete for y = " + std::to_string(y));
        }
    }
    return Instrument(kraus);
}

Instrument Instrument::luders(const Observable &b0, const Observable &b1) {
    KrausTable kraus;
    const Observable *observables[2] = {&b0, &b1};
    for (int y = 0; y < 2; y++) {
        for (int b = 0; b < 2; b++) {
            kraus[y][b] = psd_sqrt(observables[y]->effect(b));
        }
    }
    return from_kraus(kraus);
}

Operator2 Instrument::effect(int y, int b) const {
    return kraus_[y][b].adjoint() * kraus_[y][b];
}

Operator2 Instrument::apply(int y, int b, const Operator2 &rho) const {
    return kraus_[y][b] * rho * kraus_[y][b].adjoint();
}

MeasurementSet MeasurementSet::from_effects(const EffectTable &effects) {
    for (int z = 0; z < 2; z++) {
        for (int c = 0; c < 2; c++) {
            if (!effects[z][c].is_positive()) {
                throw std::invalid_argument("measurement effect is not positive semidefinite");
            }
        }
        if ((effects[z][0] + effects[z][1]).max_abs_diff(Operator2::identity()) > tol::kKraus) {
            throw std::invalid_argument("measurement effects do not sum to identity");
        }
    }
    return MeasurementSet(effects);
}

MeasurementSet MeasurementSet::from_observables(const Observable &c0, const Observable &c1) {
    return from_effects({{{c0.effect(0), c0.effect(1)}, {c1.effect(0), c1.effect(1)}}});
}

PreparationSet optimal_preparations() {
    const double h = std::numbers::sqrt2 / 2.0;
    std::array<BlochVector, 4> vectors;
    for (int x0 = 0; x0 < 2; x0++) {
        for (int x1 = 0; x1 < 2; x1++) {
            vectors[prep_index(x0, x1)] = {x0 == 0 ? h : -h, 0.0, x1 == 0 ? h : -h};
        }
    }
    return PreparationSet::from_bloch(vectors);
}

Instrument bob_instrument(double eta, std::optional<std::array<double, 2>> biases) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("sharpness eta must lie in [0, 1]");
    }
    std::array<double, 2> alpha = biases.value_or(std::array<double, 2>{0.0, 0.0});
    return Instrument::luders(Observable(alpha[0], {eta, 0.0, 0.0}), Observable(alpha[1], {0.0, 0.0, eta}));
}

MeasurementSet charlie_measurements() {
    return MeasurementSet::from_observables(Observable::unbiased({1.0, 0.0, 0.0}),
                                            Observable::unbiased({0.0, 0.0, 1.0}));
}

double eta_from_waveplate(double theta_degrees) {
    if (!(theta_degrees >= 0.0 && theta_degrees <= 22.5)) {
        throw std::invalid_argument("wave-plate angle must lie in [0, 22.5] degrees");
    }
    if (theta_degrees == 22.5) {
        return 0.0;
    }
    return std::cos(4.0 * theta_degrees * std::numbers::pi / 180.0);
}

}  // namespace seqrac
