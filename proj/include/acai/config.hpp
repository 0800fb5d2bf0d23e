// JSON vehicle configuration.
//
//   {
//     "mass_kg": 1.535, "gravity": 9.80,
//     "inertia": {"jx": 0.0411, "jy": 0.0478, "jz": 0.0599},
//     "torque_ratio": 0.1,
//     "rotors": [
//       {"arm_m": 0.275, "azimuth_deg": 0, "spin": "P", "max_lift_n": 6.125, "efficiency": 1.0},
//       ...
//     ]
//   }
//
// or {"preset": "pnpnpn-table1"}. Spin "P" is clockwise, "N" anticlockwise.
// Rotor numbers in diagnostics and overrides are 1-based.

#pragma once

#include "acai/model.hpp"

#include <json.hpp>

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>

namespace acai {

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& obj, std::initializer_list<std::string_view> known,
                                const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const auto k : known) ok = ok || key == k;
        if (!ok) throw ConfigError(where + ": unknown field '" + key + "'");
    }
}

inline double number_field(const nlohmann::json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(where + ": missing field '" + key + "'");
    if (!it->is_number()) throw ConfigError(where + "." + key + ": expected a number");
    return it->get<double>();
}

inline Spin parse_spin(const nlohmann::json& value, const std::string& where) {
    if (value.is_string()) {
        const auto s = value.get<std::string>();
        if (s == "P") return Spin::Clockwise;
        if (s == "N") return Spin::Anticlockwise;
    }
    throw ConfigError(where + ": expected \"P\" or \"N\"");
}

inline MultirotorGeometry geometry_from_json(const nlohmann::json& doc, const std::string& source) {
    if (!doc.is_object()) throw ConfigError(source + ": top level must be an object");

    if (doc.contains("preset")) {
        if (doc.size() != 1)
            throw ConfigError(source + ": 'preset' cannot be combined with explicit vehicle fields");
        if (!doc["preset"].is_string()) throw ConfigError(source + ".preset: expected a string");
        const auto name = doc["preset"].get<std::string>();
        auto g = preset_geometry(name);
        if (!g) throw ConfigError(source + ".preset: unknown preset '" + name + "'");
        return *g;
    }

    reject_unknown_keys(doc, {"mass_kg", "gravity", "inertia", "torque_ratio", "rotors"}, source);
    MultirotorGeometry g;
    g.mass = number_field(doc, "mass_kg", source);
    g.gravity = number_field(doc, "gravity", source);
    g.torque_ratio = number_field(doc, "torque_ratio", source);

    const auto inertia = doc.find("inertia");
    if (inertia == doc.end()) throw ConfigError(source + ": missing field 'inertia'");
    if (!inertia->is_object()) throw ConfigError(source + ".inertia: expected an object");
    const std::string iwhere = source + ".inertia";
    reject_unknown_keys(*inertia, {"jx", "jy", "jz"}, iwhere);
    g.jx = number_field(*inertia, "jx", iwhere);
    g.jy = number_field(*inertia, "jy", iwhere);
    g.jz = number_field(*inertia, "jz", iwhere);

    const auto rotors = doc.find("rotors");
    if (rotors == doc.end()) throw ConfigError(source + ": missing field 'rotors'");
    if (!rotors->is_array()) throw ConfigError(source + ".rotors: expected an array");
    for (std::size_t i = 0; i < rotors->size(); ++i) {
        const auto& r = (*rotors)[i];
        const std::string where = source + ".rotors[" + std::to_string(i) + "]";
        if (!r.is_object()) throw ConfigError(where + ": expected an object");
        reject_unknown_keys(r, {"arm_m", "azimuth_deg", "spin", "max_lift_n", "efficiency"}, where);
        RotorSpec spec;
        spec.arm_length = number_field(r, "arm_m", where);
        spec.azimuth = degrees_to_radians(number_field(r, "azimuth_deg", where));
        if (!r.contains("spin")) throw ConfigError(where + ": missing field 'spin'");
        spec.spin = parse_spin(r["spin"], where + ".spin");
        spec.max_lift = number_field(r, "max_lift_n", where);
        spec.efficiency = r.contains("efficiency") ? number_field(r, "efficiency", where) : 1.0;
        try {
            validate_rotor(spec, i);
        } catch (const ConfigError& e) {
            throw ConfigError(where + ": " + e.what());
        }
        g.rotors.push_back(spec);
    }

    try {
        validate(g);
    } catch (const ConfigError& e) {
        throw ConfigError(source + ": " + e.what());
    }
    return g;
}

}  // namespace detail

inline MultirotorGeometry parse_vehicle_config(std::string_view text, const std::string& source = "config") {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // The library message carries "line L, column C".
        throw ConfigError(source + ": " + e.what());
    }
    return detail::geometry_from_json(doc, source);
}

inline MultirotorGeometry load_vehicle_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_vehicle_config(buf.str(), path);
}

inline nlohmann::json vehicle_config_json(const MultirotorGeometry& g) {
    nlohmann::json doc;
    doc["mass_kg"] = g.mass;
    doc["gravity"] = g.gravity;
    doc["inertia"] = {{"jx", g.jx}, {"jy", g.jy}, {"jz", g.jz}};
    doc["torque_ratio"] = g.torque_ratio;
    doc["rotors"] = nlohmann::json::array();
    for (const auto& r : g.rotors) {
        doc["rotors"].push_back({
            {"arm_m", r.arm_length},
            {"azimuth_deg", radians_to_degrees(r.azimuth)},
            {"spin", r.spin == Spin::Clockwise ? "P" : "N"},
            {"max_lift_n", r.max_lift},
            {"efficiency", r.efficiency},
        });
    }
    return doc;
}

struct EfficiencyOverride {
    std::size_t rotor = 0;  // 0-based
    double value = 1.0;
};

/// Parses "etaI=V" with I 1-based.
inline EfficiencyOverride parse_override(std::string_view text) {
    const auto bad = [&](const std::string& why) {
        return ConfigError("bad override '" + std::string(text) + "': " + why);
    };
    if (!text.starts_with("eta")) throw bad("expected etaI=V");
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw bad("expected etaI=V");
    const std::string index_str(text.substr(3, eq - 3));
    const std::string value_str(text.substr(eq + 1));
    if (index_str.empty() || index_str.find_first_not_of("0123456789") != std::string::npos)
        throw bad("rotor index must be a positive integer");
    const unsigned long index = std::stoul(index_str);
    if (index == 0) throw bad("rotor numbers start at 1");

    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(value_str.c_str(), &end);
    if (value_str.empty() || end != value_str.c_str() + value_str.size() || errno == ERANGE)
        throw bad("value must be a number");
    if (!(value >= 0.0 && value <= 1.0)) throw bad("efficiency must lie in [0, 1]");
    return {static_cast<std::size_t>(index - 1), value};
}

inline MultirotorGeometry apply_override(MultirotorGeometry g, const EfficiencyOverride& o) {
    return with_efficiency(std::move(g), o.rotor, o.value);
}

}  // namespace acai
