#ifndef SEQRAC_INCOMPATIBILITY_H
#define SEQRAC_INCOMPATIBILITY_H

#include <string>
#include <vector>

#include "seqrac/certification.h"
#include "seqrac/qubit.h"

namespace seqrac {

/// 2(sqrt2 - 1), reached by two orthogonal Pauli observables.
double max_degree_of_incompatibility();

/// Lower bounds on the degree of incompatibility of Bob's and Charlie's
/// observable pairs.
struct IncompatibilityResult {
    double d_bob = 0.0;
    double d_charlie = 0.0;
    /// Sharpness at which the Charlie bound is smallest.
    double eta_argmin = 0.0;
    /// A raw bound exceeded 2(sqrt2 - 1) and was capped.
    bool capped = false;
    /// Bob's observables are unbiased and share one sharpness.
    std::vector<std::string> assumptions{"unbiased_bob", "eta0_eq_eta1"};
};

/// D = |n0 + n1| + |n0 - n1| - 2, negative values reset to 0.
double degree_of_incompatibility(const BlochVector &n0, const BlochVector &n1);

/// max(0, 8 w - 6). Throws std::invalid_argument outside [0, 1].
double bound_b1(double w);

/// (16 W_AC - 8) / (1 + g + f (1 - g)) - 2 with g = sqrt(1 - eta^2) and
/// f = 2 t sqrt(1 - t^2), t = min(1, eta_min / eta). No reset to zero.
double charlie_bound_at(double eta, double w_ac, double eta_min);

/// d_bob = bound_b1(W_AB). d_charlie minimizes charlie_bound_at over the
/// certified interval (sorted if inconsistent): a 10^4-point grid, then
/// golden-section refinement to 1e-10 around the best node. Throws
/// std::invalid_argument when the interval is not finite.
IncompatibilityResult bound_b2(const WitnessPair &w, const SharpnessInterval &interval);

}  // namespace seqrac

#endif
