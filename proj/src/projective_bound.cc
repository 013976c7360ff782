#include "seqrac/projective_bound.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "seqrac/optimize.h"
#include "seqrac/tolerances.h"

namespace seqrac {

namespace {

struct Vec2 {
    double x;
    double y;
    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
};

ProjectiveStrategy clamped(const std::array<double, 5> &p) {
    ProjectiveStrategy s;
    s.mixing[0] = std::clamp(p[0], 0.0, 1.0);
    s.mixing[1] = std::clamp(p[1], 0.0, 1.0);
    s.overlap = std::clamp(p[2], -1.0, 1.0);
    s.alice_angle[0] = p[3];
    s.alice_angle[1] = p[4];
    return s;
}

// Alice's pair directions along N0 + N1 and N0 - N1, the W_AB-optimal choice.
void align_alice(ProjectiveStrategy &s) {
    Vec2 n0{1.0, 0.0};
    Vec2 n1{s.overlap, std::sqrt(std::max(0.0, 1.0 - s.overlap * s.overlap))};
    Vec2 sum = n0 * s.mixing[0] + n1 * s.mixing[1];
    Vec2 diff = n0 * s.mixing[0] - n1 * s.mixing[1];
    bool has_sum = sum.norm() > 1e-15;
    bool has_diff = diff.norm() > 1e-15;
    double half_pi = std::numbers::pi / 2.0;
    if (has_sum && has_diff) {
        s.alice_angle[0] = std::atan2(sum.y, sum.x);
        s.alice_angle[1] = std::atan2(diff.y, diff.x);
    } else if (has_sum) {
        s.alice_angle[0] = std::atan2(sum.y, sum.x);
        s.alice_angle[1] = s.alice_angle[0] + half_pi;
    } else if (has_diff) {
        s.alice_angle[1] = std::atan2(diff.y, diff.x);
        s.alice_angle[0] = s.alice_angle[1] - half_pi;
    } else {
        s.alice_angle[0] = 0.0;
        s.alice_angle[1] = half_pi;
    }
}

std::vector<WitnessPoint> upper_hull(std::vector<WitnessPoint> points) {
    std::sort(points.begin(), points.end(), [](const WitnessPoint &a, const WitnessPoint &b) {
        return a.w_ab < b.w_ab || (a.w_ab == b.w_ab && a.w_ac > b.w_ac);
    });
    std::vector<WitnessPoint> hull;
    for (const WitnessPoint &p : points) {
        if (!hull.empty() && hull.back().w_ab == p.w_ab) {
            continue;
        }
        while (hull.size() >= 2) {
            const WitnessPoint &a = hull[hull.size() - 2];
            const WitnessPoint &b = hull.back();
            double cross = (b.w_ab - a.w_ab) * (p.w_ac - a.w_ac) - (b.w_ac - a.w_ac) * (p.w_ab - a.w_ab);
            if (cross >= 0.0) {
                hull.pop_back();
            } else {
                break;
            }
        }
        hull.push_back(p);
    }
    // Keep the non-increasing branch that starts at the highest W_AC.
    auto top = std::max_element(hull.begin(), hull.end(),
                                [](const WitnessPoint &a, const WitnessPoint &b) { return a.w_ac < b.w_ac; });
    return {top, hull.end()};
}

constexpr double kMaxWab = (2.0 + std::numbers::sqrt2) / 4.0;

}  // namespace

WitnessPoint projective_strategy_witnesses(const ProjectiveStrategy &s) {
    double q0 = s.mixing[0];
    double q1 = s.mixing[1];
    Vec2 n0{1.0, 0.0};
    Vec2 n1{s.overlap, std::sqrt(std::max(0.0, 1.0 - s.overlap * s.overlap))};
    Vec2 r0{std::cos(s.alice_angle[0]), std::sin(s.alice_angle[0])};
    Vec2 r1{std::cos(s.alice_angle[1]), std::sin(s.alice_angle[1])};

    Vec2 eff0 = n0 * q0;
    Vec2 eff1 = n1 * q1;
    double w_ab = 0.5 + (r0.dot(eff0 + eff1) + r1.dot(eff0 - eff1)) / 8.0;

    // Average Bloch map seen by Charlie: (1/2) sum_y [q_y n_y n_y^T + (1 - q_y) 1].
    auto channel = [&](Vec2 v) {
        return n0 * (0.5 * q0 * n0.dot(v)) + n1 * (0.5 * q1 * n1.dot(v)) + v * (1.0 - 0.5 * (q0 + q1));
    };
    double w_ac = 0.5 + (channel(r0 + r1).norm() + channel(r0 - r1).norm()) / 8.0;
    return {w_ab, w_ac};
}

ProjectiveFrontier::ProjectiveFrontier() : ProjectiveFrontier(Options{}) {}

ProjectiveFrontier::ProjectiveFrontier(const Options &options) {
    if (options.directions < 2 || options.grid_step <= 0.0 || options.grid_step > 1.0) {
        throw std::invalid_argument("invalid projective frontier options");
    }
    const int q_steps = static_cast<int>(std::lround(1.0 / options.grid_step));
    const int c_steps = 2 * q_steps;
    const int offsets = std::max(1, options.alice_offsets);

    struct Cell {
        ProjectiveStrategy strategy;
        WitnessPoint point;
    };
    std::vector<Cell> cells;
    cells.reserve(static_cast<size_t>((q_steps + 1) * (q_steps + 1) * (c_steps + 1) * offsets * offsets));
    for (int i = 0; i <= q_steps; i++) {
        for (int j = 0; j <= q_steps; j++) {
            for (int k = 0; k <= c_steps; k++) {
                ProjectiveStrategy s;
                s.mixing[0] = static_cast<double>(i) / q_steps;
                s.mixing[1] = static_cast<double>(j) / q_steps;
                s.overlap = -1.0 + static_cast<double>(k) / q_steps;
                align_alice(s);
                // Tilt Alice's directions away from the aligned choice by offsets in [-pi/2, pi/2).
                for (int u = 0; u < offsets; u++) {
                    for (int v = 0; v < offsets; v++) {
                        ProjectiveStrategy tilted = s;
                        tilted.alice_angle[0] += std::numbers::pi * (static_cast<double>(u) / offsets - 0.5 * (offsets > 1));
                        tilted.alice_angle[1] += std::numbers::pi * (static_cast<double>(v) / offsets - 0.5 * (offsets > 1));
                        cells.push_back({tilted, projective_strategy_witnesses(tilted)});
                    }
                }
            }
        }
    }

    std::vector<WitnessPoint> frontier;
    std::vector<size_t> order(cells.size());
    for (int d = 0; d < options.directions; d++) {
        double t = (std::numbers::pi / 2.0) * d / (options.directions - 1);
        double wc = std::cos(t);
        double wb = std::sin(t);
        auto score = [&](const WitnessPoint &p) { return wc * p.w_ac + wb * p.w_ab; };

        std::iota(order.begin(), order.end(), size_t{0});
        size_t keep = std::min(order.size(), static_cast<size_t>(std::max(1, options.polish_starts)));
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                          [&](size_t a, size_t b) { return score(cells[a].point) > score(cells[b].point); });

        WitnessPoint best = cells[order[0]].point;
        for (size_t r = 0; r < keep; r++) {
            const ProjectiveStrategy &s = cells[order[r]].strategy;
            std::array<double, 5> start{s.mixing[0], s.mixing[1], s.overlap, s.alice_angle[0], s.alice_angle[1]};
            auto objective = [&](const std::array<double, 5> &p) {
                return -score(projective_strategy_witnesses(clamped(p)));
            };
            auto polished = opt::nelder_mead<5>(objective, start, options.grid_step, 1e-12, 20000);
            WitnessPoint p = projective_strategy_witnesses(clamped(polished.x));
            if (score(p) > score(best)) {
                best = p;
            }
        }
        frontier.push_back(best);
    }
    hull_ = upper_hull(std::move(frontier));
}

const ProjectiveFrontier &ProjectiveFrontier::shared() {
    static const ProjectiveFrontier instance;
    return instance;
}

double ProjectiveFrontier::operator()(double w_ab) const {
    if (!(w_ab >= 0.5 - tol::kRadicand && w_ab <= kMaxWab + tol::kRadicand)) {
        throw std::domain_error("projective bound is defined for W_AB in [1/2, (2 + sqrt2)/4]");
    }
    if (w_ab <= hull_.front().w_ab) {
        return hull_.front().w_ac;
    }
    for (size_t k = 1; k < hull_.size(); k++) {
        const WitnessPoint &a = hull_[k - 1];
        const WitnessPoint &b = hull_[k];
        if (w_ab <= b.w_ab) {
            double t = (w_ab - a.w_ab) / (b.w_ab - a.w_ab);
            return a.w_ac + t * (b.w_ac - a.w_ac);
        }
    }
    return hull_.back().w_ac;
}

double projective_bound(double w_ab) {
    return ProjectiveFrontier::shared()(w_ab);
}

}  // namespace seqrac
