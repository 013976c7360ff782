#include "seqrac/incompatibility.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "seqrac/optimize.h"

namespace seqrac {

namespace {

constexpr int kGridPoints = 10000;

}  // namespace

double max_degree_of_incompatibility() {
    return 2.0 * (std::numbers::sqrt2 - 1.0);
}

double degree_of_incompatibility(const BlochVector &n0, const BlochVector &n1) {
    if (!(n0.norm() <= 1.0 + tol::kBlochNorm && n1.norm() <= 1.0 + tol::kBlochNorm)) {
        throw std::invalid_argument("observable Bloch vectors must have norm <= 1");
    }
    return std::max(0.0, (n0 + n1).norm() + (n0 - n1).norm() - 2.0);
}

double bound_b1(double w) {
    if (!(w >= 0.0 && w <= 1.0)) {
        throw std::invalid_argument("success rate must lie in [0, 1]");
    }
    return std::max(0.0, 8.0 * w - 6.0);
}

double charlie_bound_at(double eta, double w_ac, double eta_min) {
    double g = std::sqrt(std::max(0.0, 1.0 - eta * eta));
    double t = eta > 0.0 ? std::min(1.0, eta_min / eta) : 0.0;
    double f = 2.0 * t * std::sqrt(std::max(0.0, 1.0 - t * t));
    return (16.0 * w_ac - 8.0) / (1.0 + g + f * (1.0 - g)) - 2.0;
}

IncompatibilityResult bound_b2(const WitnessPair &w, const SharpnessInterval &interval) {
    double lo = interval.lower();
    double hi = interval.upper();
    if (!std::isfinite(interval.eta_min) || !std::isfinite(interval.eta_max)) {
        throw std::invalid_argument("sharpness interval is empty");
    }
    auto objective = [&](double eta) { return charlie_bound_at(eta, w.w_ac, interval.eta_min); };

    double best_eta = lo;
    double best_value = objective(lo);
    if (hi > lo) {
        double step = (hi - lo) / (kGridPoints - 1);
        int best_node = 0;
        for (int k = 1; k < kGridPoints; k++) {
            double eta = k == kGridPoints - 1 ? hi : lo + k * step;
            double v = objective(eta);
            if (v < best_value) {
                best_value = v;
                best_eta = eta;
                best_node = k;
            }
        }
        double a = std::max(lo, lo + (best_node - 1) * step);
        double b = std::min(hi, lo + (best_node + 1) * step);
        opt::ScalarMinimum refined = opt::golden_section(objective, a, b, tol::kGolden);
        if (refined.value < best_value) {
            best_value = refined.value;
            best_eta = refined.x;
        }
    }

    IncompatibilityResult out;
    double d_max = max_degree_of_incompatibility();
    double d_bob = bound_b1(w.w_ab);
    double d_charlie = std::max(0.0, best_value);
    out.capped = d_bob > d_max || d_charlie > d_max;
    out.d_bob = std::min(d_bob, d_max);
    out.d_charlie = std::min(d_charlie, d_max);
    out.eta_argmin = best_eta;
    return out;
}

}  // namespace seqrac
