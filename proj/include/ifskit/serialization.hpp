#pragma once

#include <cctype>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ifskit/ergodic.hpp"
#include "ifskit/interval.hpp"
#include "ifskit/model.hpp"
#include "ifskit/piecewise_linear.hpp"

namespace ifskit {

// Raised for any malformed config; the message always starts with the
// JSON path of the offending field so CLI users can fix the file without
// reading source.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& node, const char* key,
                                           const std::string& path) {
    if (!node.is_object()) {
        throw ConfigError(path + ": expected an object");
    }
    const auto it = node.find(key);
    if (it == node.end()) {
        throw ConfigError(path + ": missing field \"" + key + "\"");
    }
    return *it;
}

inline double require_number(const nlohmann::json& node, const std::string& path) {
    if (!node.is_number()) {
        throw ConfigError(path + ": expected a number");
    }
    return node.get<double>();
}

inline std::vector<Vertex> require_vertices(const nlohmann::json& node, const std::string& path) {
    if (!node.is_array() || node.size() < 2) {
        throw ConfigError(path + ": expected an array of at least 2 [x, y] pairs");
    }
    std::vector<Vertex> vertices;
    vertices.reserve(node.size());
    for (std::size_t i = 0; i < node.size(); ++i) {
        const std::string entry = path + "[" + std::to_string(i) + "]";
        const nlohmann::json& pair = node[i];
        if (!pair.is_array() || pair.size() != 2) {
            throw ConfigError(entry + ": expected an [x, y] pair");
        }
        vertices.push_back({require_number(pair[0], entry + "[0]"),
                            require_number(pair[1], entry + "[1]")});
    }
    return vertices;
}

}  // namespace detail

inline IfsModel model_from_json(const nlohmann::json& doc) {
    const nlohmann::json& ps = detail::require_field(doc, "phase_space", "config");
    const double lo = detail::require_number(detail::require_field(ps, "lo", "phase_space"),
                                             "phase_space.lo");
    const double hi = detail::require_number(detail::require_field(ps, "hi", "phase_space"),
                                             "phase_space.hi");
    if (!(lo < hi)) {
        throw ConfigError("phase_space: need lo < hi");
    }
    const Interval domain{lo, hi};

    const nlohmann::json& maps_node = detail::require_field(doc, "maps", "config");
    if (!maps_node.is_array() || maps_node.empty()) {
        throw ConfigError("maps: expected a nonempty array");
    }
    std::vector<PiecewiseLinearMap> maps;
    maps.reserve(maps_node.size());
    for (std::size_t i = 0; i < maps_node.size(); ++i) {
        const std::string path = "maps[" + std::to_string(i) + "]";
        const nlohmann::json& entry = maps_node[i];
        const nlohmann::json& type_node = detail::require_field(entry, "type", path);
        if (!type_node.is_string()) {
            throw ConfigError(path + ".type: expected a string");
        }
        const std::string type = type_node.get<std::string>();
        try {
            if (type == "affine") {
                const double a = detail::require_number(detail::require_field(entry, "a", path),
                                                        path + ".a");
                const double b = detail::require_number(detail::require_field(entry, "b", path),
                                                        path + ".b");
                maps.push_back(PiecewiseLinearMap::affine(a, b, domain));
            } else if (type == "pwl") {
                auto vertices = detail::require_vertices(
                    detail::require_field(entry, "vertices", path), path + ".vertices");
                PiecewiseLinearMap map{std::move(vertices)};
                if (map.domain() != domain) {
                    throw ConfigError(path + ".vertices: x-span must cover phase_space exactly");
                }
                maps.push_back(std::move(map));
            } else {
                throw ConfigError(path + ": unknown type \"" + type + "\"");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(path + ": " + e.what());
        }
    }

    const nlohmann::json& weights_node = detail::require_field(doc, "weights", "config");
    if (!weights_node.is_array()) {
        throw ConfigError("weights: expected an array");
    }
    std::vector<double> weights;
    weights.reserve(weights_node.size());
    for (std::size_t i = 0; i < weights_node.size(); ++i) {
        weights.push_back(
            detail::require_number(weights_node[i], "weights[" + std::to_string(i) + "]"));
    }

    try {
        return IfsModel{domain, std::move(maps), std::move(weights)};
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

// Emits every map in explicit vertex form (affine inputs were already
// clipped to vertices at construction), so dump -> load round-trips to an
// identical model.
inline nlohmann::json model_to_json(const IfsModel& model) {
    nlohmann::json doc;
    doc["phase_space"] = {{"lo", model.domain().lo()}, {"hi", model.domain().hi()}};
    doc["maps"] = nlohmann::json::array();
    for (std::size_t i = 0; i < model.map_count(); ++i) {
        nlohmann::json vertices = nlohmann::json::array();
        for (const Vertex& v : model.map(i).vertices()) {
            vertices.push_back({v.x, v.y});
        }
        doc["maps"].push_back({{"type", "pwl"}, {"vertices", std::move(vertices)}});
    }
    doc["weights"] = model.weights();
    return doc;
}

inline IfsModel load_model(const std::string& file_path) {
    std::ifstream in(file_path);
    if (!in) {
        throw ConfigError("cannot open config file: " + file_path);
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return model_from_json(doc);
}

inline Observable observable_from_json(const nlohmann::json& node,
                                       const std::string& path = "observable") {
    const nlohmann::json& type_node = detail::require_field(node, "type", path);
    if (!type_node.is_string()) {
        throw ConfigError(path + ".type: expected a string");
    }
    const std::string type = type_node.get<std::string>();
    try {
        if (type == "monomial") {
            const double degree = detail::require_number(
                detail::require_field(node, "degree", path), path + ".degree");
            if (degree < 0.0 || degree != static_cast<double>(static_cast<unsigned>(degree))) {
                throw ConfigError(path + ".degree: expected a nonnegative integer");
            }
            return Observable::monomial(static_cast<unsigned>(degree));
        }
        if (type == "pwl") {
            return Observable::piecewise_linear(detail::require_vertices(
                detail::require_field(node, "vertices", path), path + ".vertices"));
        }
        throw ConfigError(path + ": unknown type \"" + type + "\"");
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

// Accepts the shorthand "x" / "x^k" or an inline JSON object.
inline Observable parse_observable(const std::string& text) {
    if (!text.empty() && text.front() == '{') {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError(std::string("observable: ") + e.what());
        }
        return observable_from_json(doc);
    }
    if (text == "x") {
        return Observable::monomial(1);
    }
    if (text.size() > 2 && text[0] == 'x' && text[1] == '^') {
        const std::string digits = text.substr(2);
        bool numeric = true;
        for (char c : digits) {
            numeric = numeric && std::isdigit(static_cast<unsigned char>(c)) != 0;
        }
        if (numeric) {
            return Observable::monomial(static_cast<unsigned>(std::stoul(digits)));
        }
    }
    throw ConfigError("observable: expected \"x\", \"x^k\", or a JSON object");
}

}  // namespace ifskit
