#ifndef SEQRAC_PROJECTIVE_BOUND_H
#define SEQRAC_PROJECTIVE_BOUND_H

#include <vector>

namespace seqrac {

/// A Bob strategy built only from projective measurements: for input y he
/// applies, with probability mixing[y], the sharp Lueders instrument along a
/// unit direction, and otherwise passes the qubit on untouched with a random
/// outcome. Bob's directions are (1, 0) and (overlap, sqrt(1 - overlap^2)) in
/// a fixed plane; Alice's antipodal preparation pairs point along the angles
/// alice_angle[0], alice_angle[1] in the same plane. Charlie measures along
/// the optimal directions for the states he receives.
struct ProjectiveStrategy {
    double mixing[2] = {1.0, 1.0};
    double overlap = 0.0;
    double alice_angle[2] = {0.0, 0.0};
};

struct WitnessPoint {
    double w_ab;
    double w_ac;
};

/// Exact (W_AB, W_AC) of a projective strategy in Bloch-vector form.
WitnessPoint projective_strategy_witnesses(const ProjectiveStrategy &s);

/// Numerical upper envelope of W_AC over projective strategies, including
/// shared-randomness mixtures of them (the concave hull).
///
/// Frontier points come from maximizing cos(t) W_AC + sin(t) W_AB for t on a
/// uniform grid in [0, pi/2]. Each maximization scans (mixing0, mixing1,
/// overlap) on a coarse grid, with Alice's directions aligned to Bob's effect
/// sums and then tilted on a grid of offsets, and polishes the best cells over
/// all five parameters with Nelder-Mead. The
/// envelope is the piecewise-linear upper hull of those points, so it is a
/// lower estimate of the true projective bound and never exceeds the
/// optimal quantum trade-off.
class ProjectiveFrontier {
   public:
    struct Options {
        int directions = 241;
        double grid_step = 0.1;
        /// Alice-angle tilts per direction tried in the coarse scan.
        int alice_offsets = 8;
        int polish_starts = 4;
    };

    ProjectiveFrontier();
    explicit ProjectiveFrontier(const Options &options);

    /// Process-wide instance with default options, built on first use.
    static const ProjectiveFrontier &shared();

    /// Envelope at w_ab. Throws std::domain_error outside [1/2, (2 + sqrt2)/4].
    double operator()(double w_ab) const;

    /// Hull vertices ordered by increasing W_AB.
    const std::vector<WitnessPoint> &vertices() const { return hull_; }

   private:
    std::vector<WitnessPoint> hull_;
};

/// ProjectiveFrontier::shared()(w_ab).
double projective_bound(double w_ab);

}  // namespace seqrac

#endif
