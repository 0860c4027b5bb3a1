#pragma once

// Deterministic random instances for the property tests. Everything is
// driven by an explicit SplitMix64 so a failing case can be replayed from
// the master seed alone.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "ifskit/interval.hpp"
#include "ifskit/measure.hpp"
#include "ifskit/model.hpp"
#include "ifskit/numeric.hpp"
#include "ifskit/piecewise_linear.hpp"
#include "ifskit/rng.hpp"
#include "ifskit/word.hpp"

namespace testgen {

inline ifskit::Interval random_domain(ifskit::SplitMix64& rng) {
    static const ifskit::Interval choices[] = {{0.0, 1.0}, {-0.5, 2.0}, {2.0, 3.5}};
    return choices[rng.next_u64() % 3];
}

inline ifskit::PiecewiseLinearMap random_map(ifskit::SplitMix64& rng,
                                             const ifskit::Interval& domain) {
    std::vector<double> xs = {domain.lo(), domain.hi()};
    const std::size_t interior = rng.next_u64() % 3;
    for (std::size_t i = 0; i < interior; ++i) {
        const double x = domain.lo() + domain.diameter() * rng.next_double();
        if (domain.lo() < x && x < domain.hi()) {
            xs.push_back(x);
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<ifskit::Vertex> vertices;
    vertices.reserve(xs.size());
    for (double x : xs) {
        vertices.push_back({x, domain.lo() + domain.diameter() * rng.next_double()});
    }
    return ifskit::PiecewiseLinearMap(std::move(vertices));
}

inline ifskit::IfsModel random_model(ifskit::SplitMix64& rng, std::size_t max_maps = 3) {
    const ifskit::Interval domain = random_domain(rng);
    const std::size_t count = 1 + rng.next_u64() % max_maps;
    std::vector<ifskit::PiecewiseLinearMap> maps;
    maps.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        maps.push_back(random_map(rng, domain));
    }
    std::vector<double> weights(count);
    ifskit::KahanSum total;
    for (double& w : weights) {
        w = 0.05 + rng.next_double();
        total.add(w);
    }
    for (double& w : weights) {
        w /= total.value();
    }
    return ifskit::IfsModel(domain, std::move(maps), std::move(weights));
}

// Letters uniform over the alphabet; weights are irrelevant for purely
// structural word properties.
inline ifskit::Word random_word(ifskit::SplitMix64& rng, std::size_t alphabet,
                                std::size_t length) {
    ifskit::Word word(length);
    for (ifskit::Letter& letter : word) {
        letter = static_cast<ifskit::Letter>(rng.next_u64() % alphabet);
    }
    return word;
}

inline ifskit::DiscreteMeasure random_measure(ifskit::SplitMix64& rng,
                                              const ifskit::Interval& domain,
                                              std::size_t max_atoms = 8) {
    const std::size_t count = 1 + rng.next_u64() % max_atoms;
    std::vector<ifskit::Atom> atoms(count);
    ifskit::KahanSum total;
    for (ifskit::Atom& atom : atoms) {
        atom.position = domain.lo() + domain.diameter() * rng.next_double();
        atom.weight = 0.01 + rng.next_double();
        total.add(atom.weight);
    }
    for (ifskit::Atom& atom : atoms) {
        atom.weight /= total.value();
    }
    return ifskit::DiscreteMeasure(std::move(atoms));
}

inline std::vector<double> random_points(ifskit::SplitMix64& rng, std::size_t count,
                                         double lo = 0.0, double hi = 1.0) {
    std::vector<double> points(count);
    for (double& x : points) {
        x = lo + (hi - lo) * rng.next_double();
    }
    return points;
}

}  // namespace testgen
