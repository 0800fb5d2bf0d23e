// Dense two-phase simplex for small bounded-variable linear programs:
//
//   maximize c^T x  subject to  A x = b,  0 <= x <= u
//
// Finite upper bounds become explicit slack rows. Entering and leaving
// variables follow Bland's smallest-index rule, so the pivot sequence is
// deterministic and cannot cycle. Sized for the attainable-set probes here
// (tens of variables); not a general-purpose solver.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace acai {

class LpError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LinearProgram {
    Eigen::MatrixXd equality;  // rows x n
    Eigen::VectorXd rhs;       // rows
    Eigen::VectorXd objective; // n, maximized
    Eigen::VectorXd upper;     // n, +inf for no bound
};

struct LpOptions {
    double pivot_tolerance = 1e-11;
    double feasibility_tolerance = 1e-9;
    std::size_t max_iterations = 5000;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Eigen::VectorXd x;
    double objective = 0.0;
    std::size_t iterations = 0;
};

namespace detail {

class SimplexTableau {
public:
    SimplexTableau(Eigen::MatrixXd table, std::vector<Eigen::Index> basis, const LpOptions& options)
        : t_(std::move(table)), basis_(std::move(basis)), opt_(options) {}

    Eigen::Index rows() const { return t_.rows(); }
    Eigen::Index rhs_col() const { return t_.cols() - 1; }
    double rhs(Eigen::Index i) const { return t_(i, rhs_col()); }
    double at(Eigen::Index i, Eigen::Index j) const { return t_(i, j); }
    Eigen::Index basic(Eigen::Index i) const { return basis_[static_cast<std::size_t>(i)]; }
    std::size_t iterations() const { return iterations_; }

    void pivot(Eigen::Index row, Eigen::Index col) {
        t_.row(row) /= t_(row, col);
        for (Eigen::Index i = 0; i < t_.rows(); ++i) {
            if (i == row) continue;
            const double f = t_(i, col);
            if (f != 0.0) t_.row(i) -= f * t_.row(row);
        }
        for (Eigen::Index i = 0; i < t_.rows(); ++i)
            if (std::abs(t_(i, rhs_col())) < opt_.pivot_tolerance) t_(i, rhs_col()) = 0.0;
        basis_[static_cast<std::size_t>(row)] = col;
    }

    void drop_row(Eigen::Index row) {
        const Eigen::Index last = t_.rows() - 1;
        if (row != last) {
            t_.row(row) = t_.row(last);
            basis_[static_cast<std::size_t>(row)] = basis_[static_cast<std::size_t>(last)];
        }
        t_.conservativeResize(last, Eigen::NoChange);
        basis_.pop_back();
    }

    /// Maximizes cost^T x over columns [0, allowed_cols). Returns false when unbounded.
    bool optimize(const Eigen::VectorXd& cost, Eigen::Index allowed_cols) {
        for (;;) {
            if (++iterations_ > opt_.max_iterations)
                throw LpError("simplex iteration limit exceeded (" + std::to_string(opt_.max_iterations) + ")");
            Eigen::Index entering = -1;
            for (Eigen::Index j = 0; j < allowed_cols; ++j) {
                double reduced = cost(j);
                for (Eigen::Index i = 0; i < t_.rows(); ++i) reduced -= cost(basic(i)) * t_(i, j);
                if (reduced > opt_.pivot_tolerance * (1.0 + std::abs(cost(j)))) {
                    entering = j;
                    break;
                }
            }
            if (entering < 0) return true;

            Eigen::Index leaving = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (Eigen::Index i = 0; i < t_.rows(); ++i) {
                const double a = t_(i, entering);
                if (a <= opt_.pivot_tolerance) continue;
                const double ratio = t_(i, rhs_col()) / a;
                if (leaving < 0) {
                    leaving = i;
                    best_ratio = ratio;
                    continue;
                }
                const double tie_tol = opt_.pivot_tolerance * (1.0 + std::abs(best_ratio));
                if (ratio < best_ratio - tie_tol) {
                    leaving = i;
                    best_ratio = ratio;
                } else if (ratio <= best_ratio + tie_tol && basic(i) < basic(leaving)) {
                    leaving = i;
                    best_ratio = std::min(best_ratio, ratio);
                }
            }
            if (leaving < 0) return false;
            pivot(leaving, entering);
        }
    }

    double value(const Eigen::VectorXd& cost) const {
        double v = 0.0;
        for (Eigen::Index i = 0; i < t_.rows(); ++i) v += cost(basic(i)) * rhs(i);
        return v;
    }

private:
    Eigen::MatrixXd t_;
    std::vector<Eigen::Index> basis_;
    LpOptions opt_;
    std::size_t iterations_ = 0;
};

}  // namespace detail

inline LpSolution solve_lp(const LinearProgram& lp, const LpOptions& options = {}) {
    const Eigen::Index n = lp.objective.size();
    const Eigen::Index r = lp.equality.rows();
    if (lp.equality.cols() != n || lp.rhs.size() != r || lp.upper.size() != n)
        throw LpError("inconsistent linear program dimensions");
    if (!lp.equality.allFinite() || !lp.rhs.allFinite() || !lp.objective.allFinite())
        throw LpError("non-finite linear program data");

    std::vector<Eigen::Index> bounded;
    for (Eigen::Index j = 0; j < n; ++j) {
        if (std::isfinite(lp.upper(j))) {
            if (lp.upper(j) < 0.0) return {};  // empty box
            bounded.push_back(j);
        }
    }
    const auto nb = static_cast<Eigen::Index>(bounded.size());

    // Columns: x (n) | bound slacks (nb) | artificials (r) | rhs.
    const Eigen::Index structural = n + nb;
    const Eigen::Index total = structural + r;
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(r + nb, total + 1);
    std::vector<Eigen::Index> basis(static_cast<std::size_t>(r + nb));

    for (Eigen::Index i = 0; i < r; ++i) {
        const double sign = lp.rhs(i) < 0.0 ? -1.0 : 1.0;
        t.row(i).head(n) = sign * lp.equality.row(i);
        t(i, structural + i) = 1.0;
        t(i, total) = sign * lp.rhs(i);
        basis[static_cast<std::size_t>(i)] = structural + i;
    }
    for (Eigen::Index k = 0; k < nb; ++k) {
        const Eigen::Index row = r + k;
        t(row, bounded[static_cast<std::size_t>(k)]) = 1.0;
        t(row, n + k) = 1.0;
        t(row, total) = lp.upper(bounded[static_cast<std::size_t>(k)]);
        basis[static_cast<std::size_t>(row)] = n + k;
    }

    detail::SimplexTableau tab(std::move(t), std::move(basis), options);

    // Phase 1: drive the artificials to zero.
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(total);
    phase1.tail(r).setConstant(-1.0);
    if (!tab.optimize(phase1, total)) throw LpError("phase 1 reported unbounded");
    const double scale = 1.0 + (lp.rhs.size() > 0 ? lp.rhs.cwiseAbs().maxCoeff() : 0.0);
    if (-tab.value(phase1) > options.feasibility_tolerance * scale) {
        LpSolution out;
        out.status = LpStatus::Infeasible;
        out.iterations = tab.iterations();
        return out;
    }

    // Pivot remaining (zero-level) artificials out; rows with no structural
    // entry are redundant equalities.
    for (Eigen::Index i = tab.rows() - 1; i >= 0; --i) {
        if (tab.basic(i) < structural) continue;
        Eigen::Index col = -1;
        for (Eigen::Index j = 0; j < structural; ++j) {
            if (std::abs(tab.at(i, j)) > 1e3 * options.pivot_tolerance) {
                col = j;
                break;
            }
        }
        if (col >= 0)
            tab.pivot(i, col);
        else
            tab.drop_row(i);
    }

    Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(total);
    phase2.head(n) = lp.objective;
    LpSolution out;
    out.x = Eigen::VectorXd::Zero(n);
    if (!tab.optimize(phase2, structural)) {
        out.status = LpStatus::Unbounded;
        out.iterations = tab.iterations();
        return out;
    }
    for (Eigen::Index i = 0; i < tab.rows(); ++i)
        if (tab.basic(i) < n) out.x(tab.basic(i)) = tab.rhs(i);
    out.status = LpStatus::Optimal;
    out.objective = lp.objective.dot(out.x);
    out.iterations = tab.iterations();
    return out;
}

}  // namespace acai
