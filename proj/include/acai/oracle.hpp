// LP-based cross-check of the facet enumeration. Each probe asks how far
// one can travel from G along a direction v before leaving Omega:
//
//   maximize t  s.t.  B_f f - t v = G,  0 <= f <= K,  t >= 0.
//
// The minimum over many directions is an upper bound on the inscribed
// radius that tightens as the direction set densifies.

#pragma once

#include "acai/acai.hpp"
#include "acai/lp.hpp"
#include "acai/model.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

namespace acai {

/// Largest t with G + t v in Omega; empty when G itself is not attainable.
inline std::optional<double> directional_step(const EffectivenessMatrix& bf, const Eigen::VectorXd& max_lift,
                                              const Eigen::Vector4d& gravity, const Eigen::Vector4d& direction,
                                              const LpOptions& options = {}) {
    const Eigen::Index m = bf.cols();
    LinearProgram lp;
    lp.equality.resize(4, m + 1);
    lp.equality.leftCols(m) = bf;
    lp.equality.col(m) = -direction;
    lp.rhs = gravity;
    lp.objective = Eigen::VectorXd::Zero(m + 1);
    lp.objective(m) = 1.0;
    lp.upper.resize(m + 1);
    lp.upper.head(m) = max_lift;
    lp.upper(m) = std::numeric_limits<double>::infinity();

    const LpSolution sol = solve_lp(lp, options);
    switch (sol.status) {
        case LpStatus::Optimal: return sol.x(m);
        case LpStatus::Infeasible: return std::nullopt;
        case LpStatus::Unbounded: break;
    }
    throw LpError("directional probe unbounded; the attainable set is compact so this is a solver failure");
}

/// Uniform directions on the unit 3-sphere. The first n directions of a
/// longer request with the same seed are identical, so sample sets nest.
inline std::vector<Eigen::Vector4d> sample_directions(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Eigen::Vector4d> out;
    out.reserve(n);
    while (out.size() < n) {
        Eigen::Vector4d v(normal(rng), normal(rng), normal(rng), normal(rng));
        const double norm = v.norm();
        if (norm < 1e-12) continue;
        out.push_back(v / norm);
    }
    return out;
}

struct AcaiEstimate {
    double value = kDegenerateAcai;  // min step, or the sentinel if G is not attainable
    std::uint64_t seed = 0;
    std::size_t directions = 0;
    std::optional<Eigen::Vector4d> argmin_direction;
};

inline AcaiEstimate estimate_acai(const MultirotorGeometry& geometry, std::size_t n_directions, std::uint64_t seed,
                                  const LpOptions& options = {}) {
    if (n_directions == 0) throw DomainError("at least one direction is required");
    const EffectivenessMatrix bf = build_effectiveness(geometry);
    const Eigen::VectorXd k = max_lifts(geometry);
    const Eigen::Vector4d g = gravity_wrench(geometry);

    AcaiEstimate est;
    est.seed = seed;
    est.directions = n_directions;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& v : sample_directions(n_directions, seed)) {
        const auto step = directional_step(bf, k, g, v, options);
        if (!step) {
            est.value = kDegenerateAcai;
            est.argmin_direction.reset();
            return est;
        }
        if (*step < best) {
            best = *step;
            est.argmin_direction = v;
        }
    }
    est.value = best;
    return est;
}

/// Is there f in the lift box with B_f f = G?
inline bool hover_feasible(const MultirotorGeometry& geometry, const LpOptions& options = {}) {
    const EffectivenessMatrix bf = build_effectiveness(geometry);
    LinearProgram lp;
    lp.equality = bf;
    lp.rhs = gravity_wrench(geometry);
    lp.objective = Eigen::VectorXd::Zero(bf.cols());
    lp.upper = max_lifts(geometry);
    const auto sol = solve_lp(lp, options);
    if (sol.status == LpStatus::Unbounded) throw LpError("feasibility problem reported unbounded");
    return sol.status == LpStatus::Optimal;
}

}  // namespace acai
