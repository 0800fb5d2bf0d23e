// Vehicle description and the hover-linearized multirotor model.
//
//   x' = A x + B (F - G),   F = B_f f,   f in prod_i [0, K_i]
//
// x = [h phi theta psi v_h p q r], F = [T L M N], G = [m_a g 0 0 0].
// Rotor lifts f_i are unidirectional, which is why the Kalman rank test
// alone does not decide controllability (see ctrb.hpp).

#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace acai {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Direction of rotation seen from above. The value is the sign w_i of the
/// rotor's reactive yaw torque contribution.
enum class Spin : int {
    Clockwise = -1,     // "P"
    Anticlockwise = 1,  // "N"
};

struct RotorSpec {
    double arm_length = 0.0;  // r_i [m]
    double azimuth = 0.0;     // phi_i [rad]
    Spin spin = Spin::Anticlockwise;
    double max_lift = 0.0;    // K_i [N]
    double efficiency = 1.0;  // eta_i, 0 means the rotor has failed
};

struct MultirotorGeometry {
    std::vector<RotorSpec> rotors;
    double mass = 0.0;       // m_a [kg]
    double gravity = 9.80;   // [m/s^2]
    double jx = 0.0;         // [kg m^2]
    double jy = 0.0;
    double jz = 0.0;
    double torque_ratio = 0.0;  // k_mu, reactive torque / lift

    std::size_t rotor_count() const { return rotors.size(); }
};

using EffectivenessMatrix = Eigen::Matrix<double, 4, Eigen::Dynamic>;
using Matrix8 = Eigen::Matrix<double, 8, 8>;
using Matrix84 = Eigen::Matrix<double, 8, 4>;

struct StatePair {
    Matrix8 A;
    Matrix84 B;
    Eigen::Vector4d G;  // gravity wrench [N, N m, N m, N m]
};

inline constexpr std::size_t kMinRotors = 4;

inline constexpr double degrees_to_radians(double deg) { return deg * std::numbers::pi / 180.0; }
inline constexpr double radians_to_degrees(double rad) { return rad * 180.0 / std::numbers::pi; }

inline void validate_rotor(const RotorSpec& rotor, std::size_t index) {
    const auto where = [&] { return "rotor " + std::to_string(index + 1) + ": "; };
    if (!(rotor.max_lift > 0.0)) throw ConfigError(where() + "max lift must be positive");
    if (!(rotor.arm_length >= 0.0)) throw ConfigError(where() + "arm length must be non-negative");
    if (!(rotor.efficiency >= 0.0 && rotor.efficiency <= 1.0))
        throw ConfigError(where() + "efficiency must lie in [0, 1]");
    if (!std::isfinite(rotor.azimuth)) throw ConfigError(where() + "azimuth must be finite");
    if (rotor.spin != Spin::Clockwise && rotor.spin != Spin::Anticlockwise)
        throw ConfigError(where() + "spin must be +1 or -1");
}

/// Throws ConfigError on the first violated invariant.
inline void validate(const MultirotorGeometry& geometry) {
    if (geometry.rotor_count() < kMinRotors)
        throw ConfigError("at least 4 rotors are required, got " + std::to_string(geometry.rotor_count()));
    for (std::size_t i = 0; i < geometry.rotor_count(); ++i) validate_rotor(geometry.rotors[i], i);
    if (!(geometry.mass > 0.0)) throw ConfigError("mass must be positive");
    if (!(geometry.gravity > 0.0)) throw ConfigError("gravity must be positive");
    if (!(geometry.jx > 0.0 && geometry.jy > 0.0 && geometry.jz > 0.0))
        throw ConfigError("inertia components must be positive");
    if (!(geometry.torque_ratio > 0.0)) throw ConfigError("torque ratio must be positive");
}

/// Contribution of a healthy rotor (eta = 1) to [T L M N].
inline Eigen::Vector4d nominal_column(const RotorSpec& rotor, double torque_ratio) {
    return {1.0,
            -rotor.arm_length * std::sin(rotor.azimuth),
            rotor.arm_length * std::cos(rotor.azimuth),
            static_cast<double>(static_cast<int>(rotor.spin)) * torque_ratio};
}

inline EffectivenessMatrix build_effectiveness(const MultirotorGeometry& geometry) {
    validate(geometry);
    EffectivenessMatrix bf(4, static_cast<Eigen::Index>(geometry.rotor_count()));
    for (std::size_t i = 0; i < geometry.rotor_count(); ++i) {
        const auto& rotor = geometry.rotors[i];
        const auto col = static_cast<Eigen::Index>(i);
        if (rotor.efficiency == 0.0)
            bf.col(col).setZero();
        else
            bf.col(col) = rotor.efficiency * nominal_column(rotor, geometry.torque_ratio);
    }
    return bf;
}

inline Eigen::Vector4d gravity_wrench(const MultirotorGeometry& geometry) {
    return {geometry.mass * geometry.gravity, 0.0, 0.0, 0.0};
}

inline Eigen::VectorXd max_lifts(const MultirotorGeometry& geometry) {
    Eigen::VectorXd k(static_cast<Eigen::Index>(geometry.rotor_count()));
    for (std::size_t i = 0; i < geometry.rotor_count(); ++i) k(static_cast<Eigen::Index>(i)) = geometry.rotors[i].max_lift;
    return k;
}

inline StatePair build_state_pair(const MultirotorGeometry& geometry) {
    validate(geometry);
    StatePair pair;
    pair.A.setZero();
    pair.A.topRightCorner<4, 4>().setIdentity();

    // J_f = diag(-m_a, Jx, Jy, Jz)
    const Eigen::Vector4d jf(-geometry.mass, geometry.jx, geometry.jy, geometry.jz);
    pair.B.setZero();
    pair.B.bottomRows<4>() = jf.cwiseInverse().asDiagonal();
    pair.G = gravity_wrench(geometry);
    return pair;
}

/// Copy of `geometry` with rotor `index` (0-based) set to efficiency `eta`.
inline MultirotorGeometry with_efficiency(MultirotorGeometry geometry, std::size_t index, double eta) {
    if (index >= geometry.rotor_count())
        throw ConfigError("rotor index " + std::to_string(index + 1) + " out of range 1.." +
                          std::to_string(geometry.rotor_count()));
    geometry.rotors[index].efficiency = eta;
    return geometry;
}

// ---------------------------------------------------------------------------
// Built-in hexacopters: rotors every 60 degrees starting on the +x arm,
// mass / inertia / lift limits of the reference airframe.

namespace detail {

inline MultirotorGeometry reference_hexacopter(const std::array<Spin, 6>& spins) {
    MultirotorGeometry g;
    g.mass = 1.535;
    g.gravity = 9.80;
    g.jx = 0.0411;
    g.jy = 0.0478;
    g.jz = 0.0599;
    g.torque_ratio = 0.1;
    for (std::size_t i = 0; i < spins.size(); ++i) {
        g.rotors.push_back(RotorSpec{
            .arm_length = 0.275,
            .azimuth = degrees_to_radians(60.0 * static_cast<double>(i)),
            .spin = spins[i],
            .max_lift = 6.125,
            .efficiency = 1.0,
        });
    }
    return g;
}

}  // namespace detail

/// Standard alternating arrangement.
inline MultirotorGeometry pnpnpn_hexacopter() {
    using enum Spin;
    return detail::reference_hexacopter({Clockwise, Anticlockwise, Clockwise, Anticlockwise, Clockwise, Anticlockwise});
}

/// Arrangement that stays controllable after losing any one of rotors 1-4.
inline MultirotorGeometry ppnnpn_hexacopter() {
    using enum Spin;
    return detail::reference_hexacopter({Clockwise, Clockwise, Anticlockwise, Anticlockwise, Clockwise, Anticlockwise});
}

inline constexpr std::string_view kPresetPnpnpn = "pnpnpn-table1";
inline constexpr std::string_view kPresetPpnnpn = "ppnnpn-table1";

inline std::optional<MultirotorGeometry> preset_geometry(std::string_view name) {
    if (name == kPresetPnpnpn) return pnpnpn_hexacopter();
    if (name == kPresetPpnnpn) return ppnnpn_hexacopter();
    return std::nullopt;
}

}  // namespace acai
