#pragma once

#include <cmath>

namespace ifskit {

// Neumaier-compensated accumulator. Enumeration sums and walk expectations
// are compared at 1e-12 tolerances, so plain left-to-right summation over
// 2^20 terms is not good enough.
class KahanSum {
public:
    void add(double value) {
        const double t = sum_ + value;
        if (std::abs(sum_) >= std::abs(value)) {
            comp_ += (sum_ - t) + value;
        } else {
            comp_ += (value - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// x^k by repeated multiplication; k is a small moment order.
inline double int_pow(double x, unsigned k) {
    double result = 1.0;
    for (unsigned i = 0; i < k; ++i) {
        result *= x;
    }
    return result;
}

}  // namespace ifskit
