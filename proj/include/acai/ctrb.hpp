// Controllability of the hover model under unidirectional rotor lift.
//
// The system is controllable iff rank C(A, B) = 8 and the ACAI is strictly
// positive. test_controllability() runs the nine-step procedure; the
// eigenvector search below is an independent check of the second condition
// that never looks at facet normals.

#pragma once

#include "acai/acai.hpp"
#include "acai/kalman.hpp"
#include "acai/lp.hpp"
#include "acai/model.hpp"
#include "acai/numerics.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

namespace acai {

enum class FailedCondition { None, RankDeficit, AcaiNonpositive, EffectivenessRankDeficit };

inline std::string_view to_string(FailedCondition c) {
    switch (c) {
        case FailedCondition::None: return "none";
        case FailedCondition::RankDeficit: return "rank_deficit";
        case FailedCondition::AcaiNonpositive: return "acai_nonpositive";
        case FailedCondition::EffectivenessRankDeficit: return "effectiveness_rank_deficit";
    }
    return "unknown";
}

struct ControllabilityVerdict {
    int rank_ctrb = 0;
    int rank_bf = 0;
    // Quiet NaN when step 1 fails and the index is never evaluated.
    double acai = std::numeric_limits<double>::quiet_NaN();
    bool controllable = false;
    FailedCondition failed_condition = FailedCondition::RankDeficit;
    std::vector<FacetDistance> trace;  // steps 4-7, one entry per 3-subset
    std::optional<std::size_t> limiting_facet;
    bool mixed_sign_minimum = false;
};

inline ControllabilityVerdict test_controllability(const MultirotorGeometry& geometry, const RankTolerance& tol = {}) {
    ControllabilityVerdict v;
    const StatePair pair = build_state_pair(geometry);

    // Step 1
    v.rank_ctrb = controllability_rank(pair, tol);
    if (v.rank_ctrb < 8) {
        v.failed_condition = FailedCondition::RankDeficit;
        return v;  // step 9
    }

    // Step 2
    const EffectivenessMatrix bf = build_effectiveness(geometry);
    v.rank_bf = numerical_rank(bf, tol);
    if (v.rank_bf < 4) {
        v.acai = kDegenerateAcai;
        v.failed_condition = FailedCondition::EffectivenessRankDeficit;
        return v;  // step 9
    }

    // Step 3
    const CombinationTables tables = enumerate_combinations(geometry.rotor_count());
    const Eigen::VectorXd k = max_lifts(geometry);
    const Eigen::Vector4d center_minus_g = bf * (0.5 * k) - pair.G;

    // Steps 4-7
    v.trace.reserve(tables.size());
    for (std::size_t j = 0; j < tables.size(); ++j) v.trace.push_back(facet_distance(j, bf, tables, k, center_minus_g, tol));

    // Step 8
    const CombinedDistance rho = combine_facet_distances(v.trace);
    v.acai = rho.value;
    v.limiting_facet = rho.argmin_abs;
    v.mixed_sign_minimum = rho.mixed_sign_minimum;

    // Step 9
    v.controllable = acai_verdict(v.rank_ctrb, v.acai);
    v.failed_condition = v.controllable ? FailedCondition::None : FailedCondition::AcaiNonpositive;
    return v;
}

// ---------------------------------------------------------------------------
// Eigenvector condition. Every eigenvector of A^T has the form v = [0; k],
// and v^T B u = k^T J_f^{-1} u. With w = J_f^{-1} k the best admissible
// input gives
//
//   h(w) = max_{f in box} w^T (B_f f - G) = sum_i K_i max(0, w^T b_i) - w^T G,
//
// the support function of U. The condition holds iff h(w) > 0 for every
// nonzero w; h(w) / |w| is bounded below by the inscribed radius.

struct EigenvectorSearch {
    bool all_admitted = true;
    std::size_t directions_checked = 0;
    double worst_score = std::numeric_limits<double>::infinity();  // min h(w) / |w|
    Eigen::Vector4d worst_k = Eigen::Vector4d::Zero();
};

/// max over the lift box vertices of v^T B u, for v = [0; k].
inline double best_eigenvector_response(const EffectivenessMatrix& bf, const Eigen::VectorXd& max_lift,
                                        const Eigen::Vector4d& jf_diag, const Eigen::Vector4d& gravity,
                                        const Eigen::Vector4d& k) {
    const Eigen::Vector4d w = k.cwiseQuotient(jf_diag);
    double h = -w.dot(gravity);
    for (Eigen::Index i = 0; i < bf.cols(); ++i) {
        const double a = w.dot(bf.col(i));
        if (a > 0.0) h += max_lift(i) * a;
    }
    return h;
}

namespace detail {

/// Minimizes h(w) over one face {w_fixed = sign, |w_l| <= 1} of the cube.
inline Eigen::Vector4d minimize_support_on_face(const EffectivenessMatrix& bf, const Eigen::VectorXd& max_lift,
                                                const Eigen::Vector4d& gravity, int fixed, double sign) {
    // Variables: y_l = w_l + 1 in [0, 2] for the three free components,
    // p_i >= 0 (the positive part of K_i w^T b_i) and surplus q_i >= 0 with
    // p_i - K_i w^T b_i - q_i = 0.
    const Eigen::Index m = bf.cols();
    std::array<int, 3> free{};
    for (int l = 0, n = 0; l < 4; ++l)
        if (l != fixed) free[static_cast<std::size_t>(n++)] = l;

    const Eigen::Index nvar = 3 + 2 * m;
    LinearProgram lp;
    lp.equality = Eigen::MatrixXd::Zero(m, nvar);
    lp.rhs.resize(m);
    lp.upper = Eigen::VectorXd::Constant(nvar, std::numeric_limits<double>::infinity());
    lp.upper.head(3).setConstant(2.0);
    lp.objective = Eigen::VectorXd::Zero(nvar);

    // maximize -(sum p_i - w^T G), dropping the constant part of w^T G
    for (int n = 0; n < 3; ++n) lp.objective(n) = gravity(free[static_cast<std::size_t>(n)]);
    lp.objective.segment(3, m).setConstant(-1.0);

    for (Eigen::Index i = 0; i < m; ++i) {
        const double ki = max_lift(i);
        double offset = ki * sign * bf(fixed, i);
        for (int n = 0; n < 3; ++n) {
            const int l = free[static_cast<std::size_t>(n)];
            lp.equality(i, n) = -ki * bf(l, i);
            offset -= ki * bf(l, i);
        }
        lp.equality(i, 3 + i) = 1.0;
        lp.equality(i, 3 + m + i) = -1.0;
        lp.rhs(i) = offset;
    }

    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal) throw LpError("support-function minimization did not reach an optimum");
    Eigen::Vector4d w;
    w(fixed) = sign;
    for (int n = 0; n < 3; ++n) w(free[static_cast<std::size_t>(n)]) = sol.x(n) - 1.0;
    return w;
}

}  // namespace detail

/// Samples eigenvectors v = [0; k] with k uniform on the 3-sphere and looks
/// for an admissible input with v^T B u > 0 for each. Random samples almost
/// never land on a supporting direction when G sits exactly on the boundary,
/// so the sampled set is completed by the minimizers of h on the eight faces
/// of the unit cube, found by linear programming.
inline EigenvectorSearch search_eigenvector_condition(const MultirotorGeometry& geometry, std::size_t samples,
                                                      std::uint64_t seed = 1) {
    const EffectivenessMatrix bf = build_effectiveness(geometry);
    const Eigen::VectorXd k = max_lifts(geometry);
    const Eigen::Vector4d g = gravity_wrench(geometry);
    const Eigen::Vector4d jf(-geometry.mass, geometry.jx, geometry.jy, geometry.jz);

    EigenvectorSearch out;
    const auto consider = [&](const Eigen::Vector4d& kvec) {
        const Eigen::Vector4d w = kvec.cwiseQuotient(jf);
        const double score = best_eigenvector_response(bf, k, jf, g, kvec) / w.norm();
        ++out.directions_checked;
        if (score < out.worst_score) {
            out.worst_score = score;
            out.worst_k = kvec;
        }
        if (!(score > kVerdictTolerance)) out.all_admitted = false;
    };

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t s = 0; s < samples; ++s) {
        Eigen::Vector4d kvec(normal(rng), normal(rng), normal(rng), normal(rng));
        if (kvec.norm() < 1e-12) continue;
        consider(kvec.normalized());
    }
    for (int fixed = 0; fixed < 4; ++fixed) {
        for (const double sign : {-1.0, 1.0}) {
            const Eigen::Vector4d w = detail::minimize_support_on_face(bf, k, g, fixed, sign);
            consider(jf.cwiseProduct(w));  // k = J_f w
        }
    }
    return out;
}

inline bool check_brammer_eigenvector_condition(const MultirotorGeometry& geometry, std::size_t samples,
                                                std::uint64_t seed = 1) {
    return search_eigenvector_condition(geometry, samples, seed).all_admitted;
}

}  // namespace acai
