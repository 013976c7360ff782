#ifndef SEQRAC_OPTIMIZE_H
#define SEQRAC_OPTIMIZE_H

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>

namespace seqrac::opt {

struct ScalarMinimum {
    double x;
    double value;
};

/// Golden-section search for a minimum of f on [lo, hi], stopping once the
/// bracket is narrower than tolerance. Unimodality is assumed on the bracket;
/// both endpoints are compared against the interior result.
template <typename F>
ScalarMinimum golden_section(F &&f, double lo, double hi, double tolerance) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tolerance) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    ScalarMinimum best{fc <= fd ? c : d, std::min(fc, fd)};
    for (double edge : {lo, hi}) {
        double v = f(edge);
        if (v < best.value) {
            best = {edge, v};
        }
    }
    return best;
}

template <size_t N>
struct SimplexMinimum {
    std::array<double, N> x;
    double value;
};

/// Nelder-Mead downhill simplex. Bounds are the caller's job (clamp inside f).
template <size_t N, typename F>
SimplexMinimum<N> nelder_mead(F &&f, const std::array<double, N> &start, double initial_step, double tolerance,
                              int max_evaluations) {
    using Point = std::array<double, N>;
    std::array<Point, N + 1> simplex;
    std::array<double, N + 1> values;
    simplex[0] = start;
    for (size_t k = 0; k < N; k++) {
        simplex[k + 1] = start;
        simplex[k + 1][k] += initial_step;
    }
    for (size_t k = 0; k <= N; k++) {
        values[k] = f(simplex[k]);
    }
    int evaluations = static_cast<int>(N + 1);

    auto blend = [](const Point &from, const Point &to, double t) {
        Point out;
        for (size_t k = 0; k < N; k++) {
            out[k] = from[k] + t * (to[k] - from[k]);
        }
        return out;
    };

    std::array<size_t, N + 1> order;
    while (evaluations < max_evaluations) {
        std::iota(order.begin(), order.end(), size_t{0});
        std::sort(order.begin(), order.end(), [&](size_t i, size_t j) { return values[i] < values[j]; });
        size_t best = order[0];
        size_t worst = order[N];
        size_t second = order[N - 1];

        double spread = values[worst] - values[best];
        double size = 0.0;
        for (size_t k = 0; k <= N; k++) {
            for (size_t d = 0; d < N; d++) {
                size = std::max(size, std::abs(simplex[k][d] - simplex[best][d]));
            }
        }
        if (spread <= tolerance && size <= tolerance) {
            break;
        }

        Point centroid{};
        for (size_t k = 0; k <= N; k++) {
            if (k == worst) {
                continue;
            }
            for (size_t d = 0; d < N; d++) {
                centroid[d] += simplex[k][d] / static_cast<double>(N);
            }
        }

        Point reflected = blend(centroid, simplex[worst], -1.0);
        double fr = f(reflected);
        evaluations++;
        if (fr < values[best]) {
            Point expanded = blend(centroid, simplex[worst], -2.0);
            double fe = f(expanded);
            evaluations++;
            if (fe < fr) {
                simplex[worst] = expanded;
                values[worst] = fe;
            } else {
                simplex[worst] = reflected;
                values[worst] = fr;
            }
            continue;
        }
        if (fr < values[second]) {
            simplex[worst] = reflected;
            values[worst] = fr;
            continue;
        }
        bool outside = fr < values[worst];
        Point contracted = blend(centroid, outside ? reflected : simplex[worst], 0.5);
        double fc = f(contracted);
        evaluations++;
        if (fc < (outside ? fr : values[worst])) {
            simplex[worst] = contracted;
            values[worst] = fc;
            continue;
        }
        for (size_t k = 0; k <= N; k++) {
            if (k == best) {
                continue;
            }
            simplex[k] = blend(simplex[best], simplex[k], 0.5);
            values[k] = f(simplex[k]);
            evaluations++;
        }
    }
    size_t best = static_cast<size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    return {simplex[best], values[best]};
}

}  // namespace seqrac::opt

#endif
