#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ifskit/diagnostics.hpp"
#include "ifskit/interval.hpp"
#include "ifskit/model.hpp"
#include "ifskit/numeric.hpp"
#include "ifskit/piecewise_linear.hpp"
#include "ifskit/word.hpp"

namespace ifskit {

// One state of the skew product over the shift: the letters still to be
// consumed plus the current phase point.
struct SkewState {
    Word word;
    double x = 0.0;
};

// Applies the first letter's map to x and drops that letter.
inline SkewState skew_step(const IfsModel& model, SkewState state) {
    if (state.word.empty()) {
        throw std::invalid_argument("skew_step: word is exhausted");
    }
    validate_letters(model, state.word);
    state.x = model.map(state.word.front()).evaluate(state.x);
    state.word.erase(state.word.begin());
    return state;
}

// Serializable observable on the phase space: a monomial x^k or an
// (unconstrained-range) piecewise-linear function given by vertices.
class Observable {
public:
    static Observable monomial(unsigned degree) {
        Observable f;
        f.degree_ = degree;
        return f;
    }

    static Observable piecewise_linear(std::vector<Vertex> vertices) {
        if (vertices.size() < 2) {
            throw std::invalid_argument("Observable: need at least 2 vertices");
        }
        for (std::size_t i = 1; i < vertices.size(); ++i) {
            if (!(vertices[i - 1].x < vertices[i].x)) {
                throw std::invalid_argument(
                    "Observable: vertex x-coordinates must be strictly increasing");
            }
        }
        Observable f;
        f.vertices_ = std::move(vertices);
        return f;
    }

    double operator()(double x) const {
        if (vertices_.empty()) {
            return int_pow(x, degree_);
        }
        if (x < vertices_.front().x || x > vertices_.back().x) {
            throw std::domain_error("Observable: x=" + std::to_string(x) +
                                    " outside the vertex span");
        }
        return detail::interpolate(vertices_, x);
    }

    std::string describe() const {
        if (vertices_.empty()) {
            return "x^" + std::to_string(degree_);
        }
        return "pwl[" + std::to_string(vertices_.size()) + " vertices]";
    }

private:
    Observable() = default;
    unsigned degree_ = 1;
    std::vector<Vertex> vertices_;  // empty for monomials
};

// Running means of f along the random orbit x_j = w_{s_j}(x_{j-1}); entry
// j-1 is the mean of f(x_1), ..., f(x_j). `discard` orbit points are burned
// before averaging starts (0 by default; the averages need no burn-in in
// the limit, but finite-sample bias can be large for slowly mixing models).
template <class F>
std::vector<double> birkhoff_average(const IfsModel& model, F&& observable, double start,
                                     const Word& word, std::size_t discard = 0) {
    if (word.empty()) {
        throw std::invalid_argument("birkhoff_average: word must be nonempty");
    }
    if (discard >= word.size()) {
        throw std::invalid_argument("birkhoff_average: discard must leave at least one point");
    }
    validate_letters(model, word);
    if (!model.domain().contains(start)) {
        throw std::domain_error("birkhoff_average: start point outside the domain");
    }
    double x = start;
    std::vector<double> averages;
    averages.reserve(word.size() - discard);
    KahanSum sum;
    std::size_t counted = 0;
    for (std::size_t j = 0; j < word.size(); ++j) {
        x = model.map(word[j]).evaluate(x);
        if (j < discard) {
            continue;
        }
        sum.add(observable(x));
        ++counted;
        averages.push_back(sum.value() / static_cast<double>(counted));
    }
    return averages;
}

// Backward composition value with a certificate: `point` is
// w_{s_1} o ... o w_{s_n}(x) and `radius` the diameter of the backward
// image of the whole domain, so every backward composition value for the
// same word lies within `radius` of `point`.
struct CodedPoint {
    double point = 0.0;
    double radius = 0.0;
};

inline CodedPoint coding_point(const IfsModel& model, const Word& word, double start) {
    if (word.empty()) {
        throw std::invalid_argument("coding_point: word must be nonempty");
    }
    validate_letters(model, word);
    if (!model.domain().contains(start)) {
        throw std::domain_error("coding_point: start point outside the domain");
    }
    Interval hull = model.domain();
    double x = start;
    for (std::size_t i = word.size(); i-- > 0;) {
        const PiecewiseLinearMap& map = model.map(word[i]);
        hull = map.image(hull);
        x = map.evaluate(x);
    }
    return {x, hull.diameter()};
}

// Points near the attractor produced by words whose backward image already
// has diameter below eps at the sampling depth. Words failing the
// threshold are counted, never silently dropped: their limit point is not
// certified at this depth.
struct AttractorSample {
    std::vector<CodedPoint> points;
    std::size_t rejected = 0;
    std::size_t trials = 0;

    double certified_fraction() const {
        return trials == 0 ? 0.0
                           : static_cast<double>(points.size()) / static_cast<double>(trials);
    }
};

inline AttractorSample attractor_sample(const IfsModel& model, std::size_t trials,
                                        std::size_t depth, double eps, std::uint64_t seed) {
    if (trials == 0) {
        throw std::invalid_argument("attractor_sample: need at least one trial");
    }
    if (depth == 0) {
        throw std::invalid_argument("attractor_sample: depth must be positive");
    }
    AttractorSample sample;
    sample.trials = trials;
    const double start = model.domain().midpoint();
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const Word word = trial_word(model, seed, trial, depth);
        const CodedPoint coded = coding_point(model, word, start);
        if (coded.radius < eps) {
            sample.points.push_back(coded);
        } else {
            ++sample.rejected;
        }
    }
    return sample;
}

// max over both directed distances between two finite point sets.
inline double hausdorff_distance(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("hausdorff_distance: point sets must be nonempty");
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const auto directed = [](const std::vector<double>& from, const std::vector<double>& to) {
        double worst = 0.0;
        for (double x : from) {
            auto it = std::lower_bound(to.begin(), to.end(), x);
            double best = std::numeric_limits<double>::infinity();
            if (it != to.end()) {
                best = std::min(best, std::abs(*it - x));
            }
            if (it != to.begin()) {
                best = std::min(best, std::abs(*(it - 1) - x));
            }
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

}  // namespace ifskit
