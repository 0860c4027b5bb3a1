#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ifskit/interval.hpp"
#include "ifskit/piecewise_linear.hpp"

namespace ifskit {

// A finite family of piecewise-linear self-maps of one compact interval
// together with a probability vector over the family. Immutable once built.
class IfsModel {
public:
    IfsModel(Interval domain, std::vector<PiecewiseLinearMap> maps, std::vector<double> weights)
        : domain_(domain), maps_(std::move(maps)), weights_(std::move(weights)) {
        if (maps_.empty()) {
            throw std::invalid_argument("IfsModel: need at least one map");
        }
        if (weights_.size() != maps_.size()) {
            throw std::invalid_argument("IfsModel: got " + std::to_string(weights_.size()) +
                                        " weights for " + std::to_string(maps_.size()) + " maps");
        }
        for (const PiecewiseLinearMap& map : maps_) {
            if (map.domain() != domain_) {
                throw std::invalid_argument("IfsModel: every map must act on the model domain");
            }
        }
        double sum = 0.0;
        for (double w : weights_) {
            if (!(w >= 0.0)) {
                throw std::invalid_argument("IfsModel: weights must be nonnegative");
            }
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-12) {
            throw std::invalid_argument("IfsModel: weights must sum to 1 (got " +
                                        std::to_string(sum) + ")");
        }
    }

    const Interval& domain() const { return domain_; }
    std::size_t map_count() const { return maps_.size(); }
    const PiecewiseLinearMap& map(std::size_t index) const { return maps_.at(index); }
    const std::vector<PiecewiseLinearMap>& maps() const { return maps_; }
    double weight(std::size_t index) const { return weights_.at(index); }
    const std::vector<double>& weights() const { return weights_; }

private:
    Interval domain_;
    std::vector<PiecewiseLinearMap> maps_;
    std::vector<double> weights_;
};

}  // namespace ifskit
