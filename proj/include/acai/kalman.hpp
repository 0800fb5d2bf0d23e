// Kalman controllability matrix of the hover model.

#pragma once

#include "acai/model.hpp"
#include "acai/numerics.hpp"

namespace acai {

using ControllabilityMatrix = Eigen::Matrix<double, 8, 32>;

/// [B AB ... A^7 B]. A is nilpotent of index 2, so only the first two
/// blocks can be nonzero.
inline ControllabilityMatrix controllability_matrix(const StatePair& pair) {
    ControllabilityMatrix c;
    Matrix84 block = pair.B;
    for (int k = 0; k < 8; ++k) {
        c.middleCols<4>(4 * k) = block;
        block = pair.A * block;
    }
    return c;
}

inline int controllability_rank(const StatePair& pair, const RankTolerance& tol = {}) {
    return numerical_rank(controllability_matrix(pair), tol);
}

}  // namespace acai
