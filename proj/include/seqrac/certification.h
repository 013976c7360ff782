#ifndef SEQRAC_CERTIFICATION_H
#define SEQRAC_CERTIFICATION_H

#include <algorithm>
#include <cstdint>

#include "seqrac/protocol.h"

namespace seqrac {

/// Success rates of the Alice-Bob and Alice-Charlie random access codes.
struct WitnessPair {
    double w_ab = 0.5;
    double w_ac = 0.5;
    double sigma_ab = 0.0;
    double sigma_ac = 0.0;
};

/// Sharpness confined to [eta_min, eta_max]. When the data are noisy the
/// bounds may cross; consistent is then false and lower()/upper() sort them.
struct SharpnessInterval {
    double eta_min = 0.0;
    double eta_max = 1.0;
    double sigma_min = 0.0;
    double sigma_max = 0.0;
    bool consistent = true;
    /// The eta_max radicand was negative (W_AC above (2 + sqrt 2)/4 or below 1/2).
    bool radicand_clamped = false;

    double lower() const { return std::min(eta_min, eta_max); }
    double upper() const { return std::max(eta_min, eta_max); }
    double width() const { return eta_max - eta_min; }
};

struct CertificationResult {
    WitnessPair witnesses;
    SharpnessInterval interval;
};

/// W_AB = 1/8 sum_{x,y} P(b = x_y | x, y), W_AC = 1/8 sum_{x,z} P(c = x_z | x, z),
/// marginalizing over the other party's input and output. Sigmas are zero.
WitnessPair compute_witnesses(const JointDistribution &dist);

/// Same estimator from counts. Each P(b = x_y | x, y) pools the events of both
/// z blocks (and likewise for Charlie), and sigmas follow from independent
/// binomial errors. Throws std::invalid_argument on an empty setting.
WitnessPair compute_witnesses(const CountTable &table);

/// Witnesses with sigmas from a parametric bootstrap: every cell is redrawn
/// from Poisson(n) and the estimator reapplied. Central values are those of
/// compute_witnesses(table).
WitnessPair bootstrap_witnesses(const CountTable &table, int resamples, std::uint64_t seed);

/// Witnesses of the optimal strategy at sharpness eta:
/// ((2 + sqrt2 eta)/4, (4 + sqrt2 + sqrt(2 - 2 eta^2))/8).
WitnessPair ideal_witness_pair(double eta);

/// Largest quantum W_AC at a given W_AB. Throws std::domain_error when the
/// radicand 16 W - 16 W^2 - 2 is below -1e-12.
double optimal_tradeoff(double w_ab);

/// eta_min = sqrt2 (2 W_AB - 1), eta_max = 2 sqrt((2 + sqrt2 - 4 W_AC)(2 W_AC - 1)),
/// each clamped to [0, 1], with first-order propagated sigmas. Throws
/// std::invalid_argument for witnesses outside [0, 1].
SharpnessInterval certify_sharpness(const WitnessPair &w);

}  // namespace seqrac

#endif
