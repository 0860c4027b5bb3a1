#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ifskit/interval.hpp"
#include "ifskit/model.hpp"
#include "ifskit/numeric.hpp"
#include "ifskit/word.hpp"

namespace ifskit {

// Two composition orders matter for a word (s_1, ..., s_n):
//
//   forward image   w_{s_n} o ... o w_{s_1}(X)   (orbit order: first letter applied first)
//   backward image  w_{s_1} o ... o w_{s_n}(X)   (coding order: first letter applied last)
//
// Backward images are nested in n, so their diameters are nonincreasing;
// forward diameters may oscillate forever. The two diameter sequences have
// the same distribution under the i.i.d. word law because word reversal
// preserves it, which is exactly what reversal_integral_check verifies by
// enumeration.

// w_{s_1} o ... o w_{s_n}(X); applies the last letter first.
inline Interval backward_image(const IfsModel& model, const Word& word) {
    Interval current = model.domain();
    for (std::size_t i = word.size(); i-- > 0;) {
        current = model.map(word[i]).image(current);
    }
    return current;
}

// w_{s_n} o ... o w_{s_1}(X); applies the first letter first.
inline Interval forward_image(const IfsModel& model, const Word& word) {
    Interval current = model.domain();
    for (Letter letter : word) {
        current = model.map(letter).image(current);
    }
    return current;
}

inline double backward_diameter(const IfsModel& model, const Word& word) {
    return backward_image(model, word).diameter();
}

inline double forward_diameter(const IfsModel& model, const Word& word) {
    return forward_image(model, word).diameter();
}

// Per-depth diameters along one word: backward[k-1] and forward[k-1] are the
// diameters at depth k, cesaro[k-1] is the running mean of the forward
// entries up to depth k.
struct DiamSeries {
    std::vector<double> backward;
    std::vector<double> forward;
    std::vector<double> cesaro;
};

inline DiamSeries diam_series(const IfsModel& model, const Word& word) {
    if (word.empty()) {
        throw std::invalid_argument("diam_series: word must be nonempty");
    }
    validate_letters(model, word);
    const std::size_t n = word.size();
    DiamSeries series;
    series.backward.resize(n);
    series.forward.resize(n);
    series.cesaro.resize(n);

    Interval forward = model.domain();
    KahanSum forward_sum;
    for (std::size_t k = 0; k < n; ++k) {
        forward = model.map(word[k]).image(forward);
        series.forward[k] = forward.diameter();
        forward_sum.add(series.forward[k]);
        series.cesaro[k] = forward_sum.value() / static_cast<double>(k + 1);
    }

    // Each backward depth needs its own fold (the innermost map changes with
    // k), costing O(k) image steps per entry. Backward diameters are
    // nonincreasing and nonnegative, so once one hits zero the rest are zero.
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0 && series.backward[k - 1] == 0.0) {
            series.backward[k] = 0.0;
            continue;
        }
        Interval current = model.domain();
        for (std::size_t i = k + 1; i-- > 0;) {
            current = model.map(word[i]).image(current);
        }
        series.backward[k] = current.diameter();
    }
    return series;
}

inline constexpr std::size_t default_enumeration_cap = std::size_t{1} << 20;

// Result of exhausting all words of one length: the weighted sums of the
// two diameter functionals and the largest pointwise gap between the
// forward diameter of a word and the backward diameter of its reversal.
struct ReversalCheck {
    double forward_integral = 0.0;
    double backward_integral = 0.0;
    double max_pointwise_diff = 0.0;
    std::size_t word_count = 0;
};

inline ReversalCheck reversal_integral_check(const IfsModel& model, std::size_t depth,
                                             std::size_t enumeration_cap = default_enumeration_cap) {
    if (depth == 0) {
        throw std::invalid_argument("reversal_integral_check: depth must be positive");
    }
    const std::size_t alphabet = model.map_count();
    std::size_t count = 1;
    for (std::size_t i = 0; i < depth; ++i) {
        if (count > enumeration_cap / alphabet) {
            throw std::invalid_argument(
                "reversal_integral_check: " + std::to_string(alphabet) + "^" +
                std::to_string(depth) + " words exceed the enumeration cap of " +
                std::to_string(enumeration_cap) + "; use the Monte-Carlo estimators instead");
        }
        count *= alphabet;
    }

    ReversalCheck check;
    check.word_count = count;
    KahanSum forward_sum;
    KahanSum backward_sum;
    Word word(depth, 0);
    do {
        const double weight = cylinder_weight(model, word);
        const double fwd = forward_diameter(model, word);
        const double bwd_of_reversed = backward_diameter(model, reversed(word));
        forward_sum.add(weight * fwd);
        backward_sum.add(weight * backward_diameter(model, word));
        check.max_pointwise_diff =
            std::max(check.max_pointwise_diff, std::abs(fwd - bwd_of_reversed));
    } while (next_word(word, alphabet));
    check.forward_integral = forward_sum.value();
    check.backward_integral = backward_sum.value();
    return check;
}

// Fraction estimate with its binomial standard error.
struct MassEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t hits = 0;
    std::size_t trials = 0;
};

namespace detail {

inline void require_estimator_args(double eps, std::size_t trials) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("estimator threshold eps must be positive");
    }
    if (trials == 0) {
        throw std::invalid_argument("estimator needs at least one trial");
    }
}

inline MassEstimate finish_estimate(std::size_t hits, std::size_t trials) {
    MassEstimate estimate;
    estimate.hits = hits;
    estimate.trials = trials;
    estimate.value = static_cast<double>(hits) / static_cast<double>(trials);
    estimate.std_error =
        std::sqrt(estimate.value * (1.0 - estimate.value) / static_cast<double>(trials));
    return estimate;
}

}  // namespace detail

// Fraction of sampled depth-n words whose backward diameter is below eps.
// The finite-depth event is monotone in depth for seed-matched trials
// because backward diameters are nonincreasing along each word and the
// sampler is prefix-consistent.
inline MassEstimate estimate_backward_contraction(const IfsModel& model, std::size_t depth,
                                                  double eps, std::size_t trials,
                                                  std::uint64_t seed) {
    detail::require_estimator_args(eps, trials);
    std::size_t hits = 0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const Word word = trial_word(model, seed, trial, depth);
        if (backward_diameter(model, word) < eps) {
            ++hits;
        }
    }
    return detail::finish_estimate(hits, trials);
}

// Fraction of sampled depth-n words whose running mean of forward diameters
// is below eps at depth n.
inline MassEstimate estimate_cesaro_decay(const IfsModel& model, std::size_t depth, double eps,
                                          std::size_t trials, std::uint64_t seed) {
    detail::require_estimator_args(eps, trials);
    if (depth == 0) {
        throw std::invalid_argument("estimate_cesaro_decay: depth must be positive");
    }
    std::size_t hits = 0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const Word word = trial_word(model, seed, trial, depth);
        Interval current = model.domain();
        KahanSum sum;
        for (Letter letter : word) {
            current = model.map(letter).image(current);
            sum.add(current.diameter());
        }
        if (sum.value() / static_cast<double>(depth) < eps) {
            ++hits;
        }
    }
    return detail::finish_estimate(hits, trials);
}

// Fraction of sampled depth-n words whose forward diameters stay below eps
// on the whole window [window_start, n]. A single forward diameter can dip
// and come back, so the window maximum, not the depth-n value, is the
// honest finite-depth stand-in for eventual forward contraction.
inline MassEstimate estimate_forward_window_decay(const IfsModel& model, std::size_t depth,
                                                  std::size_t window_start, double eps,
                                                  std::size_t trials, std::uint64_t seed) {
    detail::require_estimator_args(eps, trials);
    if (window_start < 1 || window_start >= depth) {
        throw std::invalid_argument("estimate_forward_window_decay: need 1 <= window_start < depth");
    }
    std::size_t hits = 0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const Word word = trial_word(model, seed, trial, depth);
        Interval current = model.domain();
        double window_max = 0.0;
        for (std::size_t k = 0; k < depth; ++k) {
            current = model.map(word[k]).image(current);
            if (k + 1 >= window_start) {
                window_max = std::max(window_max, current.diameter());
            }
        }
        if (window_max < eps) {
            ++hits;
        }
    }
    return detail::finish_estimate(hits, trials);
}

}  // namespace ifskit
