#ifndef SEQRAC_TOMOGRAPHY_H
#define SEQRAC_TOMOGRAPHY_H

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "seqrac/qubit.h"

namespace seqrac {

/// Four trusted preparations for detector tomography. Rows must be unit
/// vectors with A^T A = (4/3) 1.
class TetrahedronDesign {
   public:
    explicit TetrahedronDesign(const std::array<BlochVector, 4> &rows);
    /// (1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1), each over sqrt 3.
    static TetrahedronDesign regular();

    const BlochVector &row(int k) const { return rows_[k]; }
    const std::array<BlochVector, 4> &rows() const { return rows_; }

   private:
    std::array<BlochVector, 4> rows_;
};

/// Linear inversion n = (A^T A)^{-1} A^T p = (3/4) A^T p, renormalized to unit
/// length when the raw estimate leaves the Bloch ball.
BlochVector invert(const TetrahedronDesign &design, const std::array<double, 4> &p);

/// Average fidelity (1/4) sum_x Tr(rho_ideal_x rho_lab_x) of lab states with
/// the design states.
double average_design_fidelity(const TetrahedronDesign &design, const std::array<BlochVector, 4> &lab);

/// Estimated observable from lab states: p_x = Tr(rho_lab_x E_lab), then invert.
BlochVector estimate_observable(const TetrahedronDesign &design, const std::array<BlochVector, 4> &lab,
                                const BlochVector &n_lab);

struct TomographyScenario {
    Observable e_lab = Observable::unbiased({0.0, 0.0, 1.0});
    double epsilon = 0.0;
};

struct WorstCaseOptions {
    int restarts = 64;
    std::uint64_t seed = 20200713;
    int max_iterations = 4000;
    double tolerance = tol::kDescent;
    /// Worker threads; 0 picks hardware concurrency.
    unsigned threads = 0;
};

struct WorstCaseResult {
    /// Smallest F(E0_lab, E0_est) found; an upper bound on the true minimum.
    double f_min = 1.0;
    BlochVector n_est;
    double eta_est = 0.0;
    double eta_error = 0.0;
    /// Bloch vectors of the lab states achieving f_min.
    std::array<BlochVector, 4> lab_bloch;
    double average_fidelity = 1.0;

    std::array<QubitState, 4> lab_states() const;
};

/// Worst tomographic estimate compatible with average preparation fidelity
/// >= 1 - epsilon. Multi-start projected gradient descent over the four lab
/// Bloch vectors (12 parameters), each iterate projected exactly onto
/// {|b_x| <= 1} intersected with the fidelity half-space. Restart k draws its
/// start from splitmix64(seed + (k + 1) * 0x9E3779B97F4A7C15); restart 0
/// starts at the ideal states. Throws std::invalid_argument for epsilon
/// outside [0, 1] or a biased observable.
WorstCaseResult worst_case_fidelity(const TomographyScenario &scenario, const WorstCaseOptions &options = {});

struct SharpnessErrorPoint {
    double eta_lab;
    double epsilon;
    double f_min;
    double eta_est;
    double eta_error;
};

/// worst_case_fidelity for E_lab = eta sigma_z at every eta in grid.
std::vector<SharpnessErrorPoint> sharpness_error_curve(double epsilon, std::span<const double> grid,
                                                       const WorstCaseOptions &options = {});

}  // namespace seqrac

#endif
