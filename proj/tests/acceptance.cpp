// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include "acai/acai.hpp"
#include "acai/ctrb.hpp"
#include "acai/oracle.hpp"
#include "acai/report.hpp"
#include "acai/sweep.hpp"

#include "support/oracles.hpp"
#include "support/random_geometry.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace acai;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;  // keep the first failure
        pass = false;
    }
};

struct Case {
    std::string label;
    MultirotorGeometry geometry;
    double expected_acai;
    bool expected_controllable;
};

std::vector<Case> failure_cases(const MultirotorGeometry& base, const std::string& name, const std::vector<double>& acai,
                              const std::vector<bool>& verdicts) {
    std::vector<Case> out;
    out.push_back({name + " no failure", base, acai[0], verdicts[0]});
    for (std::size_t i = 0; i < 6; ++i)
        out.push_back({fmt::format("{} eta{}=0", name, i + 1), with_efficiency(base, i, 0.0), acai[i + 1], verdicts[i + 1]});
    return out;
}

std::vector<Case> pnpnpn_cases() {
    return failure_cases(pnpnpn_hexacopter(), "PNPNPN", {1.4861, 0, 0, 0, 0, 0, 0},
                       {true, false, false, false, false, false, false});
}

std::vector<Case> ppnnpn_cases() {
    return failure_cases(ppnnpn_hexacopter(), "PPNNPN", {1.1295, 0.7221, 0.4510, 0.4510, 0.7221, 0, 0},
                       {true, true, true, true, true, false, false});
}

std::vector<Case> all_cases() {
    auto cases = pnpnpn_cases();
    const auto more = ppnnpn_cases();
    cases.insert(cases.end(), more.begin(), more.end());
    return cases;
}

Outcome check_table(const std::vector<Case>& cases, bool strict_zero) {
    Outcome o;
    for (const auto& c : cases) {
        const auto v = test_controllability(c.geometry);
        const double tol = (strict_zero && c.expected_acai == 0.0) ? 1e-6 : 1e-3;
        if (std::abs(v.acai - c.expected_acai) > tol)
            o.fail(fmt::format("{}: ACAI {:.6g}, expected {} +- {}", c.label, v.acai, c.expected_acai, tol));
        if (v.rank_ctrb != 8) o.fail(fmt::format("{}: rank C(A,B) = {}", c.label, v.rank_ctrb));
        if (v.controllable != c.expected_controllable) o.fail(fmt::format("{}: verdict mismatch", c.label));
    }
    if (o.pass) o.detail = fmt::format("{} cases", cases.size());
    return o;
}

Outcome criterion_pnpnpn() { return check_table(pnpnpn_cases(), true); }

Outcome criterion_ppnnpn() { return check_table(ppnnpn_cases(), true); }

Outcome criterion_oracle() {
    Outcome o;
    double worst = 0.0;
    std::size_t compared = 0;
    for (const auto& c : all_cases()) {
        const double closed = compute_acai(c.geometry).acai;
        // A "-0" here means G sits outside Omega with another facet plane through it.
        if (closed < 0.0) continue;
        ++compared;
        const double est = estimate_acai(c.geometry, 20000, 42).value;
        const double gap = est - closed;
        worst = std::max(worst, gap);
        if (gap < -kOracleSlack || gap > 0.01)
            o.fail(fmt::format("{}: estimate {:.6f} vs closed form {:.6f}", c.label, est, closed));
    }
    if (compared == 0) o.fail("no case with a non-negative closed form");
    if (o.pass) o.detail = fmt::format("{} of 14 cases have ACAI >= 0, max gap {:.5f} N", compared, worst);
    return o;
}

Outcome criterion_sweep() {
    Outcome o;
    const std::vector<std::size_t> rotors{0, 1, 4};
    const auto grid = run_sweep(pnpnpn_hexacopter(), rotors, 0.04);
    if (grid.points.size() != 17576) o.fail(fmt::format("{} lattice points", grid.points.size()));
    const std::size_t top = grid.axes[0].values.size() - 1;

    const auto at = [&](std::size_t a, std::size_t b, std::size_t c) -> const SweepPoint& {
        const std::vector<std::size_t> coords{a, b, c};
        return grid.points[grid.flat_index(coords)];
    };
    if (!at(top, top, top).controllable) o.fail("(1,1,1) not controllable");
    if (at(0, top, top).controllable || at(top, 0, top).controllable || at(top, top, 0).controllable)
        o.fail("a single-failure endpoint is controllable");

    std::size_t violations = 0, transitions = 0, unbracketed = 0;
    for_each_neighbor_pair(grid, [&](std::size_t lower, std::size_t upper) {
        const auto& p = grid.points[lower];
        const auto& q = grid.points[upper];
        if (p.controllable && !q.controllable) ++violations;
        if (p.controllable != q.controllable) {
            ++transitions;
            const auto& in = p.controllable ? p : q;
            const auto& out = p.controllable ? q : p;
            if (!(in.acai > kVerdictTolerance && out.acai <= kVerdictTolerance)) ++unbracketed;
        }
    });
    if (violations > 0) o.fail(fmt::format("{} upward-closure violations", violations));
    if (unbracketed > 0) o.fail(fmt::format("{} transitions without an ACAI sign change", unbracketed));
    if (transitions == 0) o.fail("no controllable region boundary");
    const auto controllable = std::count_if(grid.points.begin(), grid.points.end(), [](const auto& p) { return p.controllable; });
    if (o.pass)
        o.detail = fmt::format("{} points, {} controllable, {} transitions, 0 violations", grid.points.size(),
                               controllable, transitions);
    return o;
}

Outcome criterion_eigenvectors() {
    Outcome o;
    std::vector<MultirotorGeometry> geometries;
    for (const auto& c : all_cases()) geometries.push_back(c.geometry);
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 50; ++i) geometries.push_back(test_support::random_geometry(rng, 6));

    std::size_t interior = 0;
    for (std::size_t i = 0; i < geometries.size(); ++i) {
        const bool by_acai = compute_acai(geometries[i]).acai > kVerdictTolerance;
        const bool by_eigenvectors = check_brammer_eigenvector_condition(geometries[i], 1000, 1000 + i);
        interior += by_acai ? 1 : 0;
        if (by_acai != by_eigenvectors) o.fail(fmt::format("geometry {} disagrees", i));
    }
    if (o.pass)
        o.detail = fmt::format("{} geometries ({} with G interior) agree", geometries.size(), interior);
    return o;
}

Outcome criterion_invariants() {
    Outcome o;
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t counts[] = {4, 6, 8};
    const auto next_geometry = [&](std::size_t n) { return test_support::random_geometry(rng, counts[n % 3]); };
    constexpr std::size_t kTrials = 120;

    // Sign flip of each normal.
    for (std::size_t n = 0; n < kTrials; ++n) {
        const auto g = next_geometry(n);
        const auto bf = build_effectiveness(g);
        const auto tables = enumerate_combinations(g.rotor_count());
        const Eigen::VectorXd k = max_lifts(g);
        const Eigen::Vector4d cmg = bf * (0.5 * k) - gravity_wrench(g);
        for (std::size_t j = 0; j < tables.size(); ++j) {
            const auto f = facet_distance(j, bf, tables, k, cmg);
            if (f.degenerate()) continue;
            if (facet_distance_with_normal(-*f.normal, bf, tables.complement[j], k, cmg) != f.distance)
                o.fail("sign flip changed a facet distance");
        }
    }

    // Monotonicity, over geometries whose baseline index is non-negative.
    std::size_t monotone_checked = 0;
    for (std::size_t n = 0; monotone_checked < kTrials && n < 50 * kTrials; ++n) {
        const auto g = next_geometry(n);
        const double base = compute_acai(g).acai;
        if (base < 0.0) continue;
        auto weaker = g;
        for (auto& r : weaker.rotors) r.efficiency *= unit(rng) < 0.5 ? 1.0 : unit(rng);
        if (compute_acai(weaker).acai > base + 1e-9) o.fail("lowering efficiencies raised the ACAI");
        ++monotone_checked;
    }
    if (monotone_checked < kTrials) o.fail("too few non-negative baselines for the monotonicity check");

    // Permutation symmetry and translation equivalence.
    double perm_drift = 0.0, shift_drift = 0.0;
    for (std::size_t n = 0; n < kTrials; ++n) {
        const auto g = next_geometry(n);
        auto permuted = g;
        std::shuffle(permuted.rotors.begin(), permuted.rotors.end(), rng);
        perm_drift = std::max(perm_drift, std::abs(compute_acai(g).acai - compute_acai(permuted).acai));

        const auto bf = build_effectiveness(g);
        const Eigen::VectorXd k = max_lifts(g);
        const Eigen::Vector4d gw = gravity_wrench(g);
        const double omega = signed_boundary_distance(bf, k, Eigen::Vector4d::Zero(), gw).acai;
        const double input = signed_boundary_distance(bf, k, -gw, Eigen::Vector4d::Zero()).acai;
        shift_drift = std::max(shift_drift, std::abs(omega - input));
    }
    if (perm_drift > 1e-9) o.fail(fmt::format("permutation drift {:.3g}", perm_drift));
    if (shift_drift > 1e-9) o.fail(fmt::format("Omega/U drift {:.3g}", shift_drift));

    // Positive index implies hover is attainable.
    std::size_t hover_checked = 0;
    for (std::size_t n = 0; hover_checked < kTrials && n < 50 * kTrials; ++n) {
        const auto g = next_geometry(n);
        if (!(compute_acai(g).acai > 0.0)) continue;
        if (!hover_feasible(g)) o.fail("positive ACAI but hover infeasible");
        ++hover_checked;
    }
    if (hover_checked < kTrials) o.fail("too few interior geometries for the hover check");

    if (o.pass)
        o.detail = fmt::format("{} geometries per invariant, permutation drift {:.1e}, Omega/U drift {:.1e}", kTrials,
                               perm_drift, shift_drift);
    return o;
}

Outcome criterion_vertex_enumeration() {
    Outcome o;
    std::mt19937_64 rng(4242);
    const std::size_t counts[] = {4, 6, 8};
    double worst = 0.0;
    std::size_t compared = 0;
    std::size_t geometries = 0;
    for (std::size_t n = 0; geometries < 20 && n < 1000; ++n) {
        const auto g = test_support::random_geometry(rng, counts[n % 3]);
        const auto report = compute_acai(g);
        if (report.facet_distances.empty()) continue;  // rank B_f < 4 has no facets
        ++geometries;
        const auto bf = build_effectiveness(g);
        const auto tables = enumerate_combinations(g.rotor_count());
        for (const auto& f : report.facet_distances) {
            if (f.degenerate()) continue;
            const double brute = test_support::brute_force_facet_distance(*f.normal, bf, tables.complement[f.index],
                                                                     max_lifts(g), gravity_wrench(g));
            worst = std::max(worst, std::abs(brute - f.distance));
            ++compared;
        }
    }
    if (geometries < 20) o.fail("too few full-rank geometries");
    if (worst > 1e-9) o.fail(fmt::format("max deviation {:.3g}", worst));
    if (o.pass)
        o.detail = fmt::format("{} geometries, {} facet distances, max deviation {:.1e}", geometries, compared, worst);
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "PNPNPN single-failure table", 1.0, criterion_pnpnpn},
        {2, "PPNNPN single-failure table", 1.0, criterion_ppnnpn},
        {3, "LP oracle agreement (2e4 directions)", 60.0, criterion_oracle},
        {4, "eta1/eta2/eta5 sweep consistency", 300.0, criterion_sweep},
        {5, "eigenvector condition equivalence", 600.0, criterion_eigenvectors},
        {6, "randomized invariant suite", 600.0, criterion_invariants},
        {7, "facet distances vs vertex enumeration", 600.0, criterion_vertex_enumeration},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed > c.budget_s) o.fail(fmt::format("took {:.2f} s, budget {:.0f} s", elapsed, c.budget_s));
        fmt::print("{} [{}] {} ({:.2f} s): {}\n", o.pass ? "PASS" : "FAIL", c.id, c.name, elapsed, o.detail);
        failures += o.pass ? 0 : 1;
    }
    fmt::print("{} of {} criteria passed\n", criteria.size() - static_cast<std::size_t>(failures), criteria.size());
    return failures == 0 ? 0 : 1;
}
