#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ifskit/interval.hpp"
#include "ifskit/model.hpp"
#include "ifskit/piecewise_linear.hpp"

namespace ifskit {

// Halving map paired with a doubling map clipped at the right endpoint.
// Backward compositions contract almost surely even though the doubling
// branch expands, which makes this the stock model for every diameter
// statistic in the test suite.
inline IfsModel example6_ifs() {
    const Interval domain{0.0, 1.0};
    std::vector<PiecewiseLinearMap> maps;
    maps.push_back(PiecewiseLinearMap::affine(0.5, 0.0, domain));
    maps.push_back(PiecewiseLinearMap({{0.0, 0.0}, {0.5, 1.0}, {1.0, 1.0}}));
    return IfsModel{domain, std::move(maps), {0.5, 0.5}};
}

// Two uniform contractions by 1/3 onto the outer thirds of [0,1]; the
// attractor is the middle-thirds Cantor set and every statistic has a
// closed form, so this model anchors the exactness tests.
inline IfsModel cantor_ifs() {
    const Interval domain{0.0, 1.0};
    std::vector<PiecewiseLinearMap> maps;
    maps.push_back(PiecewiseLinearMap::affine(1.0 / 3.0, 0.0, domain));
    maps.push_back(PiecewiseLinearMap::affine(1.0 / 3.0, 2.0 / 3.0, domain));
    return IfsModel{domain, std::move(maps), {0.5, 0.5}};
}

// Two non-contracting monotone maps whose branches share no common fixed
// point; compositions still flatten in either order, but only gradually,
// so decay statistics are visibly below 1 at small depths.
inline IfsModel malicet_ifs() {
    const Interval domain{0.0, 1.0};
    std::vector<PiecewiseLinearMap> maps;
    maps.push_back(PiecewiseLinearMap({{0.0, 0.0}, {0.25, 0.5}, {1.0, 0.75}}));
    maps.push_back(PiecewiseLinearMap({{0.0, 0.25}, {0.75, 0.5}, {1.0, 1.0}}));
    return IfsModel{domain, std::move(maps), {0.5, 0.5}};
}

inline const std::array<std::string_view, 3>& preset_names() {
    static const std::array<std::string_view, 3> names{"example6", "cantor", "malicet"};
    return names;
}

inline std::optional<IfsModel> find_preset(std::string_view name) {
    if (name == "example6") {
        return example6_ifs();
    }
    if (name == "cantor") {
        return cantor_ifs();
    }
    if (name == "malicet") {
        return malicet_ifs();
    }
    return std::nullopt;
}

}  // namespace ifskit
