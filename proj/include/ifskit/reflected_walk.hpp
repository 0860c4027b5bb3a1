#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ifskit/numeric.hpp"

namespace ifskit {

// Distribution after `depth` steps of a random walk on the nonpositive
// integers that steps +1 with probability p_up (reflected at 0) and -1
// otherwise. For a doubling/halving pair on the unit interval the forward
// image after n letters is [0, 2^state], so this walk carries the exact
// law of the forward diameter and, by reversibility of i.i.d. words, of
// the backward diameter as well.
struct WalkDistribution {
    std::size_t depth = 0;
    std::vector<double> prob;  // prob[i] = P(state == -i), i = 0..depth

    // E[2^state] = expected image diameter at this depth.
    double expected_diameter() const {
        KahanSum sum;
        for (std::size_t i = 0; i < prob.size(); ++i) {
            sum.add(prob[i] * int_pow(0.5, static_cast<unsigned>(i)));
        }
        return sum.value();
    }

    // P(2^state < eps): the exact counterpart of the Monte-Carlo
    // contraction estimators.
    double mass_below(double eps) const {
        KahanSum sum;
        for (std::size_t i = 0; i < prob.size(); ++i) {
            if (int_pow(0.5, static_cast<unsigned>(i)) < eps) {
                sum.add(prob[i]);
            }
        }
        return sum.value();
    }

    double total() const {
        KahanSum sum;
        for (double w : prob) {
            sum.add(w);
        }
        return sum.value();
    }
};

inline WalkDistribution reflected_walk_distribution(std::size_t depth, double p_up) {
    if (!(p_up >= 0.0 && p_up <= 1.0)) {
        throw std::invalid_argument("reflected_walk_distribution: p_up must lie in [0, 1]");
    }
    const double q = 1.0 - p_up;
    std::vector<double> prob(depth + 1, 0.0);
    prob[0] = 1.0;
    std::vector<double> next(depth + 1, 0.0);
    for (std::size_t step = 1; step <= depth; ++step) {
        next.assign(depth + 1, 0.0);
        next[0] = p_up * (prob[0] + prob[1]);
        for (std::size_t i = 1; i <= step; ++i) {
            const double above = (i + 1 <= depth) ? prob[i + 1] : 0.0;
            next[i] = q * prob[i - 1] + p_up * above;
        }
        prob.swap(next);
    }
    return {depth, std::move(prob)};
}

// P(the walk sits at 0 at some time in [window_start, depth]); equivalently
// the probability that the forward image recovers full diameter inside the
// window. Splits the mass into not-yet-returned and returned parts and
// retires mass the first time it lands on 0 inside the window.
inline double reflected_walk_return_probability(std::size_t window_start, std::size_t depth,
                                                double p_up) {
    if (window_start < 1 || window_start > depth) {
        throw std::invalid_argument(
            "reflected_walk_return_probability: need 1 <= window_start <= depth");
    }
    if (!(p_up >= 0.0 && p_up <= 1.0)) {
        throw std::invalid_argument(
            "reflected_walk_return_probability: p_up must lie in [0, 1]");
    }
    const double q = 1.0 - p_up;
    std::vector<double> alive(depth + 1, 0.0);
    alive[0] = 1.0;
    std::vector<double> next(depth + 1, 0.0);
    KahanSum hit;
    for (std::size_t step = 1; step <= depth; ++step) {
        next.assign(depth + 1, 0.0);
        next[0] = p_up * (alive[0] + alive[1]);
        for (std::size_t i = 1; i <= step; ++i) {
            const double above = (i + 1 <= depth) ? alive[i + 1] : 0.0;
            next[i] = q * alive[i - 1] + p_up * above;
        }
        if (step >= window_start) {
            hit.add(next[0]);
            next[0] = 0.0;
        }
        alive.swap(next);
    }
    return hit.value();
}

}  // namespace ifskit
