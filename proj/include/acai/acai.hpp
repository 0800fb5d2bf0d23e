// Available control authority index: the signed radius of the largest ball
// centred at the gravity wrench G that fits inside the attainable set
//
//   Omega = { B_f f : 0 <= f_i <= K_i }.
//
// Omega is a zonotope. Each 3-subset of rotors whose columns span a
// hyperplane contributes one pair of parallel facets with unit normal xi;
// the facet pair sits at distance
//
//   d_max = 1/2 * sum_{i not in subset} K_i |xi^T b_i|
//
// from the centre F_c = B_f K / 2, so the distance from G to that pair is
// d_max - |xi^T (F_c - G)|. The index is the sign of the smallest such
// distance times the smallest magnitude.

#pragma once

#include "acai/kalman.hpp"
#include "acai/model.hpp"
#include "acai/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace acai {

// Stand-ins for +inf / -inf that serialize as ordinary numbers.
inline constexpr double kUnboundedFacet = 1e6;
inline constexpr double kDegenerateAcai = -1e6;

/// acai must exceed this for the strict "rho > 0" test.
inline constexpr double kVerdictTolerance = 1e-6;

struct FacetDistance {
    std::size_t index = 0;             // row of the combination tables, 0-based
    std::array<int, 3> rotors{};       // 0-based rotor indices spanning the facet
    double distance = kUnboundedFacet; // signed
    std::optional<Eigen::Vector4d> normal;

    bool degenerate() const { return !normal.has_value(); }
};

struct AcaiReport {
    double acai = kDegenerateAcai;
    std::vector<FacetDistance> facet_distances;
    int rank_bf = 0;
    int rank_ctrb = 0;
    bool controllable = false;
    std::optional<std::size_t> limiting_facet;  // argmin |d_j|, lowest j on ties
    // min(d) < 0 while the facet of smallest |d| has d > 0: the signed
    // combination mixes magnitudes from different facets.
    bool mixed_sign_minimum = false;
};

inline Eigen::VectorXd center_lift(const MultirotorGeometry& geometry) { return 0.5 * max_lifts(geometry); }

/// Half-width of the facet pair with normal `xi` about the zonotope centre.
inline double facet_half_width(const Eigen::Vector4d& xi, const EffectivenessMatrix& bf,
                               std::span<const int> complement, const Eigen::VectorXd& max_lift) {
    double sum = 0.0;
    for (const int i : complement) {
        const double a = xi.dot(bf.col(i));
        // sign(a) * K_i * a
        if (a > 0.0)
            sum += max_lift(i) * a;
        else if (a < 0.0)
            sum -= max_lift(i) * a;
    }
    return 0.5 * sum;
}

/// Signed distance from a point X to the facet pair with normal `xi`, where
/// `center_minus_point` = F_c - X.
inline double facet_distance_with_normal(const Eigen::Vector4d& xi, const EffectivenessMatrix& bf,
                                         std::span<const int> complement, const Eigen::VectorXd& max_lift,
                                         const Eigen::Vector4d& center_minus_point) {
    return facet_half_width(xi, bf, complement, max_lift) - std::abs(xi.dot(center_minus_point));
}

inline Matrix43 chosen_columns(const EffectivenessMatrix& bf, const std::array<int, 3>& rotors) {
    Matrix43 b1;
    for (int k = 0; k < 3; ++k) b1.col(k) = bf.col(rotors[static_cast<std::size_t>(k)]);
    return b1;
}

inline FacetDistance facet_distance(std::size_t j, const EffectivenessMatrix& bf, const CombinationTables& tables,
                                    const Eigen::VectorXd& max_lift, const Eigen::Vector4d& center_minus_point,
                                    const RankTolerance& tol = {}) {
    FacetDistance out;
    out.index = j;
    out.rotors = tables.chosen.at(j);
    out.normal = left_null_unit(chosen_columns(bf, out.rotors), tol);
    if (out.normal)
        out.distance = facet_distance_with_normal(*out.normal, bf, tables.complement[j], max_lift, center_minus_point);
    else
        out.distance = kUnboundedFacet;
    return out;
}

inline FacetDistance facet_distance(std::size_t j, const EffectivenessMatrix& bf, const CombinationTables& tables,
                                    const MultirotorGeometry& geometry, const Eigen::Vector4d& gravity) {
    const Eigen::VectorXd k = max_lifts(geometry);
    const Eigen::Vector4d fc = bf * (0.5 * k);
    return facet_distance(j, bf, tables, k, fc - gravity);
}

struct CombinedDistance {
    double value = kUnboundedFacet;
    std::optional<std::size_t> argmin_abs;
    bool mixed_sign_minimum = false;
};

/// sign(min_j d_j) * min_j |d_j|
inline CombinedDistance combine_facet_distances(std::span<const FacetDistance> facets) {
    CombinedDistance out;
    if (facets.empty()) return out;
    double min_signed = facets.front().distance;
    std::size_t best = 0;
    for (std::size_t j = 0; j < facets.size(); ++j) {
        min_signed = std::min(min_signed, facets[j].distance);
        if (std::abs(facets[j].distance) < std::abs(facets[best].distance)) best = j;
    }
    const double magnitude = std::abs(facets[best].distance);
    const double sign = min_signed > 0.0 ? 1.0 : (min_signed < 0.0 ? -1.0 : 0.0);
    out.value = sign * magnitude;
    out.argmin_abs = best;
    out.mixed_sign_minimum = min_signed < 0.0 && facets[best].distance > 0.0;
    return out;
}

struct AttainableSetDistance {
    double acai = kDegenerateAcai;
    int rank_bf = 0;
    std::vector<FacetDistance> facets;
    std::optional<std::size_t> limiting_facet;
    bool mixed_sign_minimum = false;
};

/// rho(X, boundary of (Omega + offset)). With offset = 0 and X = G this is the
/// ACAI; with offset = -G and X = 0 it is the same quantity measured in the
/// input set U = Omega - G.
inline AttainableSetDistance signed_boundary_distance(const EffectivenessMatrix& bf, const Eigen::VectorXd& max_lift,
                                                      const Eigen::Vector4d& offset, const Eigen::Vector4d& point,
                                                      const RankTolerance& tol = {}) {
    AttainableSetDistance out;
    out.rank_bf = numerical_rank(bf, tol);
    if (out.rank_bf < 4) return out;

    const auto tables = enumerate_combinations(static_cast<std::size_t>(bf.cols()));
    const Eigen::Vector4d center = bf * (0.5 * max_lift) + offset;
    const Eigen::Vector4d center_minus_point = center - point;
    out.facets.reserve(tables.size());
    for (std::size_t j = 0; j < tables.size(); ++j)
        out.facets.push_back(facet_distance(j, bf, tables, max_lift, center_minus_point, tol));

    const auto combined = combine_facet_distances(out.facets);
    out.acai = combined.value;
    out.limiting_facet = combined.argmin_abs;
    out.mixed_sign_minimum = combined.mixed_sign_minimum;
    return out;
}

inline bool acai_verdict(int rank_ctrb, double acai) { return rank_ctrb == 8 && acai > kVerdictTolerance; }

inline AcaiReport compute_acai(const MultirotorGeometry& geometry, const RankTolerance& tol = {}) {
    const EffectivenessMatrix bf = build_effectiveness(geometry);
    const StatePair pair = build_state_pair(geometry);
    auto dist = signed_boundary_distance(bf, max_lifts(geometry), Eigen::Vector4d::Zero(), pair.G, tol);

    AcaiReport report;
    report.acai = dist.acai;
    report.facet_distances = std::move(dist.facets);
    report.rank_bf = dist.rank_bf;
    report.rank_ctrb = controllability_rank(pair, tol);
    report.controllable = acai_verdict(report.rank_ctrb, report.acai);
    report.limiting_facet = dist.limiting_facet;
    report.mixed_sign_minimum = dist.mixed_sign_minimum;
    return report;
}

}  // namespace acai
