#include "seqrac/tomography.h"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

#include "seqrac/protocol.h"

namespace seqrac {

namespace {

using LabStates = std::array<BlochVector, 4>;

BlochVector clamp_to_ball(const BlochVector &v) {
    double n = v.norm();
    return n > 1.0 ? v * (1.0 / n) : v;
}

// Euclidean projection onto {|b_x| <= 1} intersected with {sum_x a_x . b_x >= bound}.
// KKT: b_x = clamp(y_x + mu a_x) with the smallest mu >= 0 meeting the bound.
class FeasibleSet {
   public:
    FeasibleSet(const TetrahedronDesign &design, double epsilon)
        : design_(design), bound_(4.0 * (1.0 - 2.0 * epsilon)) {}

    double alignment(const LabStates &b) const {
        double s = 0.0;
        for (int x = 0; x < 4; x++) {
            s += design_.row(x).dot(b[x]);
        }
        return s;
    }

    LabStates project(const LabStates &y) const {
        auto shifted = [&](double mu) {
            LabStates b;
            for (int x = 0; x < 4; x++) {
                b[x] = clamp_to_ball(y[x] + design_.row(x) * mu);
            }
            return b;
        };
        LabStates b = shifted(0.0);
        if (alignment(b) >= bound_) {
            return b;
        }
        double lo = 0.0;
        double hi = 1.0;
        while (alignment(shifted(hi)) < bound_) {
            lo = hi;
            hi *= 2.0;
            if (hi > 1e15) {
                return design_.rows();
            }
        }
        for (int it = 0; it < 200 && hi - lo > 1e-16 * std::max(1.0, hi); it++) {
            double mid = 0.5 * (lo + hi);
            if (alignment(shifted(mid)) >= bound_) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        return shifted(hi);
    }

   private:
    const TetrahedronDesign &design_;
    double bound_;
};

struct Descent {
    double value;
    LabStates states;
};

Descent descend(const TetrahedronDesign &design, const FeasibleSet &feasible, const BlochVector &n_lab,
                LabStates start, const WorstCaseOptions &options) {
    auto objective = [&](const LabStates &b) {
        return bloch_fidelity(n_lab, estimate_observable(design, b, n_lab));
    };
    auto coord = [](LabStates &b, int k) -> double & {
        BlochVector &v = b[k / 3];
        return k % 3 == 0 ? v.x : (k % 3 == 1 ? v.y : v.z);
    };

    LabStates b = feasible.project(start);
    double value = objective(b);
    double step = 0.1;
    const double h = 1e-7;
    for (int it = 0; it < options.max_iterations; it++) {
        std::array<double, 12> grad;
        for (int k = 0; k < 12; k++) {
            LabStates plus = b;
            LabStates minus = b;
            coord(plus, k) += h;
            coord(minus, k) -= h;
            grad[k] = (objective(plus) - objective(minus)) / (2.0 * h);
        }
        bool accepted = false;
        while (step > 1e-14) {
            LabStates trial = b;
            for (int k = 0; k < 12; k++) {
                coord(trial, k) -= step * grad[k];
            }
            trial = feasible.project(trial);
            double decrease = 0.0;
            double moved = 0.0;
            for (int k = 0; k < 12; k++) {
                double delta = coord(b, k) - coord(trial, k);
                decrease += grad[k] * delta;
                moved = std::max(moved, std::abs(delta));
            }
            double trial_value = objective(trial);
            if (trial_value <= value - 1e-4 * decrease) {
                double gain = value - trial_value;
                b = trial;
                value = trial_value;
                step = std::min(2.0 * step, 1.0);
                accepted = true;
                if (gain < options.tolerance * 1e-2 && moved < options.tolerance) {
                    return {value, b};
                }
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            break;
        }
    }
    return {value, b};
}

LabStates random_start(const TetrahedronDesign &design, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> spread(0.02, 0.8);
    double s = spread(rng);
    LabStates y;
    for (int x = 0; x < 4; x++) {
        y[x] = design.row(x) + BlochVector{gauss(rng), gauss(rng), gauss(rng)} * s;
    }
    return y;
}

}  // namespace

TetrahedronDesign::TetrahedronDesign(const std::array<BlochVector, 4> &rows) : rows_(rows) {
    for (const BlochVector &r : rows) {
        if (std::abs(r.norm() - 1.0) > 1e-12) {
            throw std::invalid_argument("tetrahedron design rows must be unit vectors");
        }
    }
    // A^T A == (4/3) 1
    for (int i = 0; i < 3; i++) {
        for (int j = 0; j < 3; j++) {
            double s = 0.0;
            for (const BlochVector &r : rows) {
                const double ri[3] = {r.x, r.y, r.z};
                s += ri[i] * ri[j];
            }
            if (std::abs(s - (i == j ? 4.0 / 3.0 : 0.0)) > 1e-12) {
                throw std::invalid_argument("tetrahedron design must satisfy A^T A = (4/3) 1");
            }
        }
    }
}

TetrahedronDesign TetrahedronDesign::regular() {
    const double s = 1.0 / std::sqrt(3.0);
    return TetrahedronDesign({BlochVector{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}});
}

BlochVector invert(const TetrahedronDesign &design, const std::array<double, 4> &p) {
    BlochVector n;
    for (int x = 0; x < 4; x++) {
        n = n + design.row(x) * (0.75 * p[x]);
    }
    return clamp_to_ball(n);
}

double average_design_fidelity(const TetrahedronDesign &design, const std::array<BlochVector, 4> &lab) {
    double total = 0.0;
    for (int x = 0; x < 4; x++) {
        total += 0.5 * (1.0 + design.row(x).dot(lab[x]));
    }
    return total / 4.0;
}

BlochVector estimate_observable(const TetrahedronDesign &design, const std::array<BlochVector, 4> &lab,
                                const BlochVector &n_lab) {
    std::array<double, 4> p;
    for (int x = 0; x < 4; x++) {
        p[x] = lab[x].dot(n_lab);
    }
    return invert(design, p);
}

std::array<QubitState, 4> WorstCaseResult::lab_states() const {
    return {bloch_to_state(lab_bloch[0]), bloch_to_state(lab_bloch[1]), bloch_to_state(lab_bloch[2]),
            bloch_to_state(lab_bloch[3])};
}

WorstCaseResult worst_case_fidelity(const TomographyScenario &scenario, const WorstCaseOptions &options) {
    if (!(scenario.epsilon >= 0.0 && scenario.epsilon <= 1.0)) {
        throw std::invalid_argument("preparation error epsilon must lie in [0, 1]");
    }
    if (scenario.e_lab.bias() != 0.0) {
        throw std::invalid_argument("detector tomography expects an unbiased observable");
    }
    if (options.restarts < 1) {
        throw std::invalid_argument("at least one restart is required");
    }
    const TetrahedronDesign design = TetrahedronDesign::regular();
    const BlochVector n_lab = scenario.e_lab.bloch();
    const FeasibleSet feasible(design, scenario.epsilon);

    auto finish = [&](const LabStates &states) {
        WorstCaseResult r;
        r.lab_bloch = states;
        r.n_est = estimate_observable(design, states, n_lab);
        r.f_min = bloch_fidelity(n_lab, r.n_est);
        r.eta_est = r.n_est.norm();
        r.eta_error = std::abs(r.eta_est - n_lab.norm());
        r.average_fidelity = average_design_fidelity(design, states);
        return r;
    };

    if (scenario.epsilon == 0.0) {
        // Perfect preparations pin the lab states to the design; the inversion is exact.
        WorstCaseResult r = finish(design.rows());
        r.n_est = n_lab;
        r.f_min = 1.0;
        r.eta_est = n_lab.norm();
        r.eta_error = 0.0;
        return r;
    }

    std::vector<Descent> runs(static_cast<size_t>(options.restarts));
    auto run_range = [&](int begin, int end) {
        for (int k = begin; k < end; k++) {
            LabStates start = design.rows();
            if (k > 0) {
                std::mt19937_64 rng(splitmix64(options.seed + static_cast<std::uint64_t>(k + 1) * 0x9E3779B97F4A7C15ULL));
                start = random_start(design, rng);
            }
            runs[static_cast<size_t>(k)] = descend(design, feasible, n_lab, start, options);
        }
    };
    unsigned threads = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(options.restarts));
    std::vector<std::future<void>> workers;
    int chunk = (options.restarts + static_cast<int>(threads) - 1) / static_cast<int>(threads);
    for (int begin = 0; begin < options.restarts; begin += chunk) {
        workers.push_back(std::async(std::launch::async, run_range, begin, std::min(options.restarts, begin + chunk)));
    }
    for (auto &w : workers) {
        w.get();
    }

    size_t best = 0;
    for (size_t k = 1; k < runs.size(); k++) {
        if (runs[k].value < runs[best].value) {
            best = k;
        }
    }
    return finish(runs[best].states);
}

std::vector<SharpnessErrorPoint> sharpness_error_curve(double epsilon, std::span<const double> grid,
                                                       const WorstCaseOptions &options) {
    std::vector<SharpnessErrorPoint> rows;
    rows.reserve(grid.size());
    for (double eta : grid) {
        if (!(eta >= 0.0 && eta <= 1.0)) {
            throw std::invalid_argument("sharpness grid values must lie in [0, 1]");
        }
        TomographyScenario scenario{Observable::unbiased({0.0, 0.0, eta}), epsilon};
        WorstCaseResult r = worst_case_fidelity(scenario, options);
        rows.push_back({eta, epsilon, r.f_min, r.eta_est, r.eta_error});
    }
    return rows;
}

}  // namespace seqrac
