#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ifskit/interval.hpp"
#include "ifskit/model.hpp"
#include "ifskit/numeric.hpp"

namespace ifskit {

struct Atom {
    double position;
    double weight;
};

// Finitely supported probability measure: atoms sorted by position, equal
// positions merged, weights nonnegative with total mass 1 (within 1e-10).
// Atom lists stay exact under pushforward by a piecewise-linear map, which
// is why measures are atom lists and not histograms.
class DiscreteMeasure {
public:
    explicit DiscreteMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
        if (atoms_.empty()) {
            throw std::invalid_argument("DiscreteMeasure: need at least one atom");
        }
        std::sort(atoms_.begin(), atoms_.end(),
                  [](const Atom& a, const Atom& b) { return a.position < b.position; });
        std::vector<Atom> merged;
        merged.reserve(atoms_.size());
        for (const Atom& atom : atoms_) {
            if (!(atom.weight >= 0.0)) {
                throw std::invalid_argument("DiscreteMeasure: atom weights must be nonnegative");
            }
            if (!merged.empty() && merged.back().position == atom.position) {
                merged.back().weight += atom.weight;
            } else {
                merged.push_back(atom);
            }
        }
        atoms_ = std::move(merged);
        KahanSum total;
        for (const Atom& atom : atoms_) {
            total.add(atom.weight);
        }
        if (std::abs(total.value() - 1.0) > 1e-10) {
            throw std::invalid_argument("DiscreteMeasure: weights must sum to 1 (got " +
                                        std::to_string(total.value()) + ")");
        }
    }

    static DiscreteMeasure dirac(double position) { return DiscreteMeasure({{position, 1.0}}); }

    // `count` equally spaced atoms of equal mass spanning the interval.
    static DiscreteMeasure uniform(const Interval& support, std::size_t count) {
        if (count == 0) {
            throw std::invalid_argument("DiscreteMeasure::uniform: count must be positive");
        }
        if (count == 1) {
            return dirac(support.midpoint());
        }
        std::vector<Atom> atoms;
        atoms.reserve(count);
        const double step = support.diameter() / static_cast<double>(count - 1);
        const double mass = 1.0 / static_cast<double>(count);
        for (std::size_t i = 0; i < count; ++i) {
            const double x = (i + 1 == count) ? support.hi() : support.lo() + step * i;
            atoms.push_back({x, mass});
        }
        return DiscreteMeasure(std::move(atoms));
    }

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }

    double total_mass() const {
        KahanSum total;
        for (const Atom& atom : atoms_) {
            total.add(atom.weight);
        }
        return total.value();
    }

    // Mass carried by atoms with |position - center| <= radius.
    double mass_within(double center, double radius) const {
        KahanSum total;
        for (const Atom& atom : atoms_) {
            if (std::abs(atom.position - center) <= radius) {
                total.add(atom.weight);
            }
        }
        return total.value();
    }

private:
    std::vector<Atom> atoms_;
};

// One application of the weighted-pushforward operator: every atom (x, m)
// contributes (w_k(x), p_k * m) for each map k. With grid > 0, positions are
// snapped to the nearest multiple of grid (clamped into the domain) and
// merged, which moves each atom by at most grid/2 and therefore perturbs
// the result by at most grid/2 in transport distance. Snapping resolves
// exact half-grid ties to the even multiple: a tie-away rule would give
// the lowest grid levels a systematic drift that can keep mass from ever
// settling onto a fixed point sitting on the grid. Zero-weight maps
// contribute no atoms.
inline DiscreteMeasure transfer_apply(const IfsModel& model, const DiscreteMeasure& measure,
                                      double grid) {
    if (!(grid >= 0.0)) {
        throw std::invalid_argument("transfer_apply: grid must be nonnegative");
    }
    const Interval& domain = model.domain();
    for (const Atom& atom : measure.atoms()) {
        if (!domain.contains(atom.position)) {
            throw std::invalid_argument("transfer_apply: atom at " +
                                        std::to_string(atom.position) +
                                        " lies outside the model domain");
        }
    }
    std::vector<Atom> pushed;
    pushed.reserve(measure.size() * model.map_count());
    for (std::size_t k = 0; k < model.map_count(); ++k) {
        const double p = model.weight(k);
        if (p == 0.0) {
            continue;
        }
        const PiecewiseLinearMap& map = model.map(k);
        for (const Atom& atom : measure.atoms()) {
            double x = map.evaluate(atom.position);
            if (grid > 0.0) {
                x = std::clamp(std::nearbyint(x / grid) * grid, domain.lo(), domain.hi());
            }
            pushed.push_back({x, p * atom.weight});
        }
    }
    return DiscreteMeasure(std::move(pushed));
}

// 1-Wasserstein distance between two atom measures, computed as the exact
// integral of the absolute CDF difference (the CDF gap is piecewise
// constant between support points). On a compact interval this equals the
// supremum of integral differences over 1-Lipschitz test functions, so no
// optimization over test functions is ever needed.
inline double hutchinson_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
    const std::vector<Atom>& a = mu.atoms();
    const std::vector<Atom>& b = nu.atoms();
    std::size_t i = 0;
    std::size_t j = 0;
    double cdf_gap = 0.0;
    double last_pos = 0.0;
    bool started = false;
    KahanSum total;
    while (i < a.size() || j < b.size()) {
        double pos;
        if (j >= b.size() || (i < a.size() && a[i].position <= b[j].position)) {
            pos = a[i].position;
        } else {
            pos = b[j].position;
        }
        if (started && pos > last_pos) {
            total.add(std::abs(cdf_gap) * (pos - last_pos));
        }
        while (i < a.size() && a[i].position == pos) {
            cdf_gap += a[i].weight;
            ++i;
        }
        while (j < b.size() && b[j].position == pos) {
            cdf_gap -= b[j].weight;
            ++j;
        }
        last_pos = pos;
        started = true;
    }
    return total.value();
}

// k-th raw moment.
inline double moment(const DiscreteMeasure& measure, unsigned order) {
    KahanSum total;
    for (const Atom& atom : measure.atoms()) {
        total.add(atom.weight * int_pow(atom.position, order));
    }
    return total.value();
}

struct FixedPointResult {
    DiscreteMeasure measure;
    // Transport distance between consecutive iterates, one entry per step.
    std::vector<double> step_distances;
    std::vector<std::size_t> atom_counts;
    std::size_t iterations = 0;
    bool converged = false;
};

// Iterates transfer_apply from `initial` until consecutive iterates are
// closer than tol in transport distance or max_iter steps have run.
// Non-convergence is reported through the flag, not an exception; the
// stopping rule is a Cauchy surrogate, so callers judging convergence for
// slowly mixing models should inspect the distance history.
inline FixedPointResult fixed_point(const IfsModel& model, const DiscreteMeasure& initial,
                                    double tol, std::size_t max_iter, double grid) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("fixed_point: tol must be positive");
    }
    if (!(grid > 0.0)) {
        throw std::invalid_argument("fixed_point: grid must be positive to bound the atom count");
    }
    if (max_iter == 0) {
        throw std::invalid_argument("fixed_point: max_iter must be positive");
    }
    FixedPointResult result{initial, {}, {}, 0, false};
    result.step_distances.reserve(max_iter);
    result.atom_counts.reserve(max_iter);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        DiscreteMeasure next = transfer_apply(model, result.measure, grid);
        const double distance = hutchinson_distance(next, result.measure);
        result.measure = std::move(next);
        result.step_distances.push_back(distance);
        result.atom_counts.push_back(result.measure.size());
        result.iterations = iter + 1;
        if (distance < tol) {
            result.converged = true;
            break;
        }
    }
    return result;
}

}  // namespace ifskit
