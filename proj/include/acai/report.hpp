// Text, CSV and JSON renderings of analysis results. All numeric output
// uses '.' as decimal separator and LF line endings.

#pragma once

#include "acai/ctrb.hpp"
#include "acai/model.hpp"
#include "acai/oracle.hpp"
#include "acai/sweep.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace acai {

inline constexpr int kCsvPrecision = 10;

/// Fixed-point with `precision` decimals; a rounded negative zero prints as zero.
inline std::string format_fixed(double v, int precision) {
    if (std::isnan(v)) return "nan";
    std::string s = fmt::format("{:.{}f}", v, precision);
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

inline std::string format_acai(double v) { return format_fixed(v, 4); }

inline std::string verdict_word(bool controllable) { return controllable ? "controllable" : "uncontrollable"; }

inline std::string rotor_list(const std::array<int, 3>& rotors) {
    return fmt::format("{} {} {}", rotors[0] + 1, rotors[1] + 1, rotors[2] + 1);
}

struct TextStyle {
    bool color = false;
};

inline std::string paint(const std::string& s, bool good, const TextStyle& style) {
    if (!style.color) return s;
    return fmt::format("\x1b[{}m{}\x1b[0m", good ? 32 : 31, s);
}

inline std::string analysis_text(const std::string& name, const MultirotorGeometry& g,
                                 const ControllabilityVerdict& v, const TextStyle& style = {}) {
    std::string out;
    out += fmt::format("vehicle:          {} ({} rotors)\n", name, g.rotor_count());
    out += "efficiencies:    ";
    for (const auto& r : g.rotors) out += " " + format_fixed(r.efficiency, 2);
    out += "\n";
    out += fmt::format("rank C(A,B):      {}\n", v.rank_ctrb);
    out += fmt::format("rank B_f:         {}\n", v.rank_bf);
    out += fmt::format("ACAI:             {}\n", format_acai(v.acai));
    if (v.limiting_facet) {
        const auto& f = v.trace[*v.limiting_facet];
        out += fmt::format("limiting rotors:  {} (d = {})\n", rotor_list(f.rotors), format_acai(f.distance));
    }
    if (v.mixed_sign_minimum) out += "note:             smallest |d_j| comes from a facet with positive d_j\n";
    out += fmt::format("verdict:          {}", paint(verdict_word(v.controllable), v.controllable, style));
    if (!v.controllable) out += fmt::format(" ({})", to_string(v.failed_condition));
    out += "\n";
    return out;
}

inline nlohmann::json vector_json(const Eigen::Vector4d& v) { return {v(0), v(1), v(2), v(3)}; }

inline nlohmann::json analysis_json(const std::string& name, const MultirotorGeometry& g,
                                    const ControllabilityVerdict& v) {
    nlohmann::json j;
    j["vehicle"] = name;
    j["rotor_count"] = g.rotor_count();
    j["efficiencies"] = nlohmann::json::array();
    for (const auto& r : g.rotors) j["efficiencies"].push_back(r.efficiency);
    j["rank_ctrb"] = v.rank_ctrb;
    j["rank_bf"] = v.rank_bf;
    j["acai"] = v.acai;
    j["controllable"] = v.controllable;
    j["failed_condition"] = std::string(to_string(v.failed_condition));
    j["mixed_sign_minimum"] = v.mixed_sign_minimum;
    if (v.limiting_facet) {
        const auto& f = v.trace[*v.limiting_facet];
        j["limiting_rotors"] = {f.rotors[0] + 1, f.rotors[1] + 1, f.rotors[2] + 1};
    } else {
        j["limiting_rotors"] = nullptr;
    }
    j["facets"] = nlohmann::json::array();
    for (const auto& f : v.trace) {
        nlohmann::json e;
        e["j"] = f.index + 1;
        e["rotors"] = {f.rotors[0] + 1, f.rotors[1] + 1, f.rotors[2] + 1};
        e["d"] = f.distance;
        e["normal"] = f.normal ? vector_json(*f.normal) : nlohmann::json(nullptr);
        j["facets"].push_back(std::move(e));
    }
    return j;
}

// ---------------------------------------------------------------------------

struct FailureCase {
    std::string label;  // "no failure" or "etaI=0"
    ControllabilityVerdict verdict;
};

/// The undamaged vehicle followed by each single-rotor failure.
inline std::vector<FailureCase> failure_table(const MultirotorGeometry& g) {
    std::vector<FailureCase> rows;
    rows.push_back({"no failure", test_controllability(g)});
    for (std::size_t i = 0; i < g.rotor_count(); ++i)
        rows.push_back({fmt::format("eta{}=0", i + 1), test_controllability(with_efficiency(g, i, 0.0))});
    return rows;
}

inline std::string failure_table_text(const std::vector<FailureCase>& rows, const TextStyle& style = {}) {
    std::string out = fmt::format("{:<12} {:>4} {:>14}  {}\n", "case", "rank", "ACAI", "controllability");
    for (const auto& r : rows)
        out += fmt::format("{:<12} {:>4} {:>14}  {}\n", r.label, r.verdict.rank_ctrb, format_acai(r.verdict.acai),
                           paint(verdict_word(r.verdict.controllable), r.verdict.controllable, style));
    return out;
}

inline std::string failure_table_csv(const std::vector<FailureCase>& rows) {
    std::string out = "case,rank,acai,verdict\n";
    for (const auto& r : rows)
        out += fmt::format("{},{},{},{}\n", r.label, r.verdict.rank_ctrb, format_fixed(r.verdict.acai, kCsvPrecision),
                           verdict_word(r.verdict.controllable));
    return out;
}

inline nlohmann::json failure_table_json(const std::vector<FailureCase>& rows) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows)
        j.push_back({{"case", r.label},
                     {"rank_ctrb", r.verdict.rank_ctrb},
                     {"rank_bf", r.verdict.rank_bf},
                     {"acai", r.verdict.acai},
                     {"controllable", r.verdict.controllable}});
    return j;
}

// ---------------------------------------------------------------------------

inline std::string sweep_csv(const SweepGrid& grid) {
    std::string out;
    for (const auto& axis : grid.axes) out += fmt::format("eta_{},", axis.rotor + 1);
    out += "acai,controllable\n";
    for (const auto& p : grid.points) {
        for (const double e : p.efficiencies) out += fmt::format("{:.6g},", e);
        out += fmt::format("{},{}\n", format_fixed(p.acai, kCsvPrecision), p.controllable ? "true" : "false");
    }
    return out;
}

// ---------------------------------------------------------------------------

/// Tolerance of the upper-bound check: a sampled minimum may undershoot the
/// closed form only by LP round-off.
inline constexpr double kOracleSlack = 1e-9;

struct OracleComparison {
    double closed_form = kDegenerateAcai;
    AcaiEstimate estimate;
    double gap = 0.0;  // estimate - closed form
    bool upper_bound_holds = true;
};

inline OracleComparison compare_with_oracle(const MultirotorGeometry& g, std::size_t directions, std::uint64_t seed) {
    OracleComparison c;
    c.closed_form = compute_acai(g).acai;
    c.estimate = estimate_acai(g, directions, seed);
    c.gap = c.estimate.value - c.closed_form;
    c.upper_bound_holds = c.closed_form < 0.0 || c.gap >= -kOracleSlack;
    return c;
}

inline std::string oracle_text(const OracleComparison& c) {
    return fmt::format(
        "closed-form ACAI: {}\n"
        "sampled estimate: {}\n"
        "gap:              {}\n"
        "directions:       {}\n"
        "seed:             {}\n"
        "upper bound:      {}\n",
        format_fixed(c.closed_form, 6), format_fixed(c.estimate.value, 6), format_fixed(c.gap, 6),
        c.estimate.directions, c.estimate.seed, c.upper_bound_holds ? "holds" : "VIOLATED");
}

inline nlohmann::json oracle_json(const OracleComparison& c) {
    return {{"closed_form", c.closed_form},
            {"estimate", c.estimate.value},
            {"gap", c.gap},
            {"directions", c.estimate.directions},
            {"seed", c.estimate.seed},
            {"upper_bound_holds", c.upper_bound_holds}};
}

}  // namespace acai
