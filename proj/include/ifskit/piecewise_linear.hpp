#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ifskit/interval.hpp"

namespace ifskit {

struct Vertex {
    double x;
    double y;

    friend bool operator==(const Vertex&, const Vertex&) = default;
};

namespace detail {

// Linear interpolation over an ordered vertex list whose x-coordinates span
// the queried range. Exact at vertices; between vertices the result is
// clamped into the hull of the two bracketing y-values, which keeps
// evaluation monotone along each segment even under rounding.
inline double interpolate(const std::vector<Vertex>& vertices, double x) {
    auto it = std::upper_bound(vertices.begin(), vertices.end(), x,
                               [](double value, const Vertex& v) { return value < v.x; });
    if (it == vertices.end()) {
        return vertices.back().y;
    }
    const Vertex& b = *it;
    const Vertex& a = *(it - 1);
    if (x == a.x) {
        return a.y;
    }
    const double t = (x - a.x) / (b.x - a.x);
    const double y = a.y + t * (b.y - a.y);
    return std::clamp(y, std::min(a.y, b.y), std::max(a.y, b.y));
}

}  // namespace detail

// Continuous piecewise-linear self-map of a compact interval. The vertex
// x-coordinates are strictly increasing and span the whole domain; every
// vertex y stays inside the domain, so arbitrary compositions never leave
// it. Because extrema of a piecewise-linear function over an interval occur
// only at the interval endpoints or at interior vertices, image() returns
// the exact set image {f(x) : x in I} (up to rounding of each evaluation).
class PiecewiseLinearMap {
public:
    explicit PiecewiseLinearMap(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
        if (vertices_.size() < 2) {
            throw std::invalid_argument("PiecewiseLinearMap: need at least 2 vertices");
        }
        for (std::size_t i = 1; i < vertices_.size(); ++i) {
            if (!(vertices_[i - 1].x < vertices_[i].x)) {
                throw std::invalid_argument(
                    "PiecewiseLinearMap: vertex x-coordinates must be strictly increasing");
            }
        }
        const double lo = vertices_.front().x;
        const double hi = vertices_.back().x;
        for (const Vertex& v : vertices_) {
            if (!(lo <= v.y && v.y <= hi)) {
                throw std::invalid_argument(
                    "PiecewiseLinearMap: vertex y=" + std::to_string(v.y) +
                    " leaves the domain [" + std::to_string(lo) + ", " + std::to_string(hi) +
                    "]; the map must send the domain into itself");
            }
        }
    }

    // a*x + b clipped into `domain`, converted to vertex form. Breakpoints
    // are inserted where the line crosses the domain boundaries.
    static PiecewiseLinearMap affine(double slope, double offset, const Interval& domain) {
        if (!std::isfinite(slope) || !std::isfinite(offset)) {
            throw std::invalid_argument("PiecewiseLinearMap::affine: coefficients must be finite");
        }
        const double lo = domain.lo();
        const double hi = domain.hi();
        std::vector<double> xs = {lo, hi};
        if (slope != 0.0) {
            for (double level : {lo, hi}) {
                const double x = (level - offset) / slope;
                if (lo < x && x < hi) {
                    xs.push_back(x);
                }
            }
        }
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        std::vector<Vertex> vertices;
        vertices.reserve(xs.size());
        for (double x : xs) {
            vertices.push_back({x, std::clamp(slope * x + offset, lo, hi)});
        }
        return PiecewiseLinearMap(std::move(vertices));
    }

    static PiecewiseLinearMap identity(const Interval& domain) {
        return PiecewiseLinearMap({{domain.lo(), domain.lo()}, {domain.hi(), domain.hi()}});
    }

    const std::vector<Vertex>& vertices() const { return vertices_; }

    Interval domain() const { return {vertices_.front().x, vertices_.back().x}; }

    double evaluate(double x) const {
        if (x < vertices_.front().x || x > vertices_.back().x) {
            throw std::domain_error("PiecewiseLinearMap: x=" + std::to_string(x) +
                                    " outside the domain");
        }
        return detail::interpolate(vertices_, x);
    }

    double operator()(double x) const { return evaluate(x); }

    // Exact image {f(x) : x in within} as an interval.
    Interval image(const Interval& within) const {
        double lo_val = evaluate(within.lo());
        double hi_val = evaluate(within.hi());
        double mn = std::min(lo_val, hi_val);
        double mx = std::max(lo_val, hi_val);
        auto it = std::upper_bound(vertices_.begin(), vertices_.end(), within.lo(),
                                   [](double value, const Vertex& v) { return value < v.x; });
        for (; it != vertices_.end() && it->x < within.hi(); ++it) {
            mn = std::min(mn, it->y);
            mx = std::max(mx, it->y);
        }
        return {mn, mx};
    }

private:
    std::vector<Vertex> vertices_;
};

// Image of `start` under the composition that applies maps.front() first
// and maps.back() last.
inline Interval compose_image(const std::vector<PiecewiseLinearMap>& maps, Interval start) {
    if (maps.empty()) {
        throw std::invalid_argument("compose_image: map list must be nonempty");
    }
    for (const PiecewiseLinearMap& map : maps) {
        start = map.image(start);
    }
    return start;
}

}  // namespace ifskit
