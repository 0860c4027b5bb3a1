#pragma once

#include <stdexcept>
#include <string>

namespace ifskit {

// Closed bounded interval [lo, hi] on the real line.
class Interval {
public:
    Interval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (!(lo <= hi)) {
            throw std::invalid_argument("Interval: lo must not exceed hi (got [" +
                                        std::to_string(lo) + ", " + std::to_string(hi) + "])");
        }
    }

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double diameter() const { return hi_ - lo_; }
    double midpoint() const { return lo_ + (hi_ - lo_) / 2.0; }

    bool contains(double x) const { return lo_ <= x && x <= hi_; }
    bool contains(const Interval& other) const {
        return lo_ <= other.lo_ && other.hi_ <= hi_;
    }

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    double lo_;
    double hi_;
};

}  // namespace ifskit
