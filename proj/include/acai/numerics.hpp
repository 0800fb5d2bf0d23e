// Small dense kernels used by the facet enumeration: numerical rank,
// the unit left-null vector of a 4x3 block, and the 3-subset tables.

#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace acai {

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Rank threshold policy. With no absolute value the usual
/// max(rows, cols) * sigma_max * eps criterion applies.
struct RankTolerance {
    std::optional<double> absolute;

    double threshold(const Eigen::VectorXd& singular_values, Eigen::Index rows, Eigen::Index cols) const {
        if (absolute) return *absolute;
        const double sigma_max = singular_values.size() > 0 ? singular_values.maxCoeff() : 0.0;
        return static_cast<double>(std::max(rows, cols)) * sigma_max * std::numeric_limits<double>::epsilon();
    }
};

inline int rank_from_singular_values(const Eigen::VectorXd& sv, double tau) {
    return static_cast<int>((sv.array() > tau).count());
}

inline int numerical_rank(const Eigen::Ref<const Eigen::MatrixXd>& m, const RankTolerance& tol = {}) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const Eigen::VectorXd sv = svd.singularValues();
    return rank_from_singular_values(sv, tol.threshold(sv, m.rows(), m.cols()));
}

using Matrix43 = Eigen::Matrix<double, 4, 3>;

/// Flip `v` so that its first component that is clearly nonzero is positive.
/// Components below `zero_tol * |v|_inf` are treated as zero; they may carry
/// rounding noise of either sign.
inline Eigen::Vector4d canonical_sign(Eigen::Vector4d v, double zero_tol = 1e-12) {
    const double scale = v.cwiseAbs().maxCoeff();
    for (int i = 0; i < 4; ++i) {
        if (std::abs(v(i)) > zero_tol * scale) {
            if (v(i) < 0.0) v = -v;
            break;
        }
    }
    return v;
}

/// Unit xi with xi^T b1 = 0. Empty when rank(b1) < 3, in which case the
/// columns do not span a hyperplane and no facet normal exists.
inline std::optional<Eigen::Vector4d> left_null_unit(const Matrix43& b1, const RankTolerance& tol = {}) {
    Eigen::JacobiSVD<Matrix43> svd(b1, Eigen::ComputeFullU);
    const Eigen::VectorXd sv = svd.singularValues();
    if (rank_from_singular_values(sv, tol.threshold(sv, 4, 3)) < 3) return std::nullopt;
    Eigen::Vector4d xi = svd.matrixU().col(3);
    xi.normalize();
    return canonical_sign(xi);
}

/// Every 3-subset of {0..m-1} in lexicographic order, paired with its
/// sorted complement. Indices are 0-based.
struct CombinationTables {
    std::size_t rotor_count = 0;
    std::vector<std::array<int, 3>> chosen;
    std::vector<std::vector<int>> complement;

    std::size_t size() const { return chosen.size(); }
};

inline std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline CombinationTables enumerate_combinations(std::size_t m) {
    if (m < 4) throw DomainError("combination tables need m >= 4, got " + std::to_string(m));
    CombinationTables t;
    t.rotor_count = m;
    t.chosen.reserve(binomial(m, 3));
    t.complement.reserve(binomial(m, 3));
    const int n = static_cast<int>(m);
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            for (int c = b + 1; c < n; ++c) {
                t.chosen.push_back({a, b, c});
                std::vector<int> rest;
                rest.reserve(m - 3);
                for (int i = 0; i < n; ++i)
                    if (i != a && i != b && i != c) rest.push_back(i);
                t.complement.push_back(std::move(rest));
            }
        }
    }
    return t;
}

}  // namespace acai
