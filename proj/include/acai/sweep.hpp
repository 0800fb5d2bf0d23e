// Lattice sweeps over rotor efficiencies.

#pragma once

#include "acai/ctrb.hpp"
#include "acai/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace acai {

inline constexpr double kDefaultSweepSpacing = 0.04;

struct SweepAxis {
    std::size_t rotor = 0;  // 0-based
    std::vector<double> values;
};

struct SweepPoint {
    std::vector<std::size_t> coords;  // one lattice index per axis
    std::vector<double> efficiencies; // one value per axis
    double acai = kDegenerateAcai;
    bool controllable = false;
};

struct SweepGrid {
    std::vector<SweepAxis> axes;
    std::vector<SweepPoint> points;  // lexicographic in coords, first axis slowest
    double spacing = kDefaultSweepSpacing;

    std::size_t flat_index(std::span<const std::size_t> coords) const {
        std::size_t idx = 0;
        for (std::size_t a = 0; a < axes.size(); ++a) idx = idx * axes[a].values.size() + coords[a];
        return idx;
    }
};

/// 0, s, 2s, ... below 1, then exactly 1.0.
inline std::vector<double> lattice_values(double spacing) {
    if (!(spacing > 0.0 && spacing <= 1.0)) throw ConfigError("spacing must lie in (0, 1]");
    std::vector<double> out;
    for (std::size_t i = 0;; ++i) {
        const double v = static_cast<double>(i) * spacing;
        if (v >= 1.0 - 1e-9) break;
        out.push_back(v);
    }
    out.push_back(1.0);
    return out;
}

inline SweepGrid run_sweep(const MultirotorGeometry& base, std::span<const std::size_t> varied_rotors, double spacing) {
    validate(base);
    if (varied_rotors.empty() || varied_rotors.size() > 3)
        throw ConfigError("between 1 and 3 rotors can be swept, got " + std::to_string(varied_rotors.size()));
    std::set<std::size_t> seen;
    for (const auto r : varied_rotors) {
        if (r >= base.rotor_count())
            throw ConfigError("rotor index " + std::to_string(r + 1) + " out of range 1.." +
                              std::to_string(base.rotor_count()));
        if (!seen.insert(r).second) throw ConfigError("rotor " + std::to_string(r + 1) + " listed twice");
    }

    SweepGrid grid;
    grid.spacing = spacing;
    const auto values = lattice_values(spacing);
    for (const auto r : varied_rotors) grid.axes.push_back({r, values});

    std::size_t total = 1;
    for (const auto& axis : grid.axes) total *= axis.values.size();
    grid.points.reserve(total);

    std::vector<std::size_t> coords(grid.axes.size(), 0);
    MultirotorGeometry g = base;
    for (std::size_t n = 0; n < total; ++n) {
        SweepPoint p;
        p.coords = coords;
        for (std::size_t a = 0; a < grid.axes.size(); ++a) {
            const double eta = grid.axes[a].values[coords[a]];
            g.rotors[grid.axes[a].rotor].efficiency = eta;
            p.efficiencies.push_back(eta);
        }
        const auto verdict = test_controllability(g);
        p.acai = verdict.acai;
        p.controllable = verdict.controllable;
        grid.points.push_back(std::move(p));

        for (std::size_t a = grid.axes.size(); a-- > 0;) {
            if (++coords[a] < grid.axes[a].values.size()) break;
            coords[a] = 0;
        }
    }
    return grid;
}

/// Calls fn(point_index, neighbour_index) for every pair of lattice points
/// one step apart along a single axis, each pair once.
template <class Fn>
void for_each_neighbor_pair(const SweepGrid& grid, Fn&& fn) {
    for (std::size_t i = 0; i < grid.points.size(); ++i) {
        auto coords = grid.points[i].coords;
        for (std::size_t a = 0; a < grid.axes.size(); ++a) {
            if (coords[a] + 1 >= grid.axes[a].values.size()) continue;
            ++coords[a];
            fn(i, grid.flat_index(coords));
            --coords[a];
        }
    }
}

/// Points whose verdict (acai > tolerance) differs from at least one
/// lattice neighbour.
inline std::vector<SweepPoint> boundary_extract(const SweepGrid& grid, double tolerance = kVerdictTolerance) {
    std::vector<bool> on_boundary(grid.points.size(), false);
    const auto inside = [&](std::size_t i) { return grid.points[i].acai > tolerance; };
    for_each_neighbor_pair(grid, [&](std::size_t i, std::size_t j) {
        if (inside(i) != inside(j)) on_boundary[i] = on_boundary[j] = true;
    });
    std::vector<SweepPoint> out;
    for (std::size_t i = 0; i < grid.points.size(); ++i)
        if (on_boundary[i]) out.push_back(grid.points[i]);
    return out;
}

/// Upper bound on how much the index can change between lattice
/// neighbours: moving eta_i by one step moves rotor i's segment generator by
/// spacing * K_i * |b_i|, and the inscribed radius is 1-Lipschitz in the
/// Hausdorff distance.
inline double neighbor_gap_bound(const MultirotorGeometry& base, const SweepGrid& grid) {
    double bound = 0.0;
    for (const auto& axis : grid.axes) {
        const auto& rotor = base.rotors[axis.rotor];
        bound = std::max(bound, grid.spacing * rotor.max_lift * nominal_column(rotor, base.torque_ratio).norm());
    }
    return bound;
}

}  // namespace acai
