// Prints the ACAI of the reference PNPNPN hexacopter as one rotor loses
// efficiency, and where the verdict flips.

#include "acai/ctrb.hpp"
#include "acai/model.hpp"

#include <fmt/format.h>

#include <cstdlib>

int main(int argc, char** argv) {
    const std::size_t rotor = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 1;
    auto g = acai::pnpnpn_hexacopter();
    if (rotor < 1 || rotor > g.rotor_count()) {
        fmt::print(stderr, "rotor must be 1..{}\n", g.rotor_count());
        return 1;
    }

    fmt::print("eta{}   acai     verdict\n", rotor);
    for (int step = 10; step >= 0; --step) {
        const double eta = step / 10.0;
        g = acai::with_efficiency(g, rotor - 1, eta);
        const auto v = acai::test_controllability(g);
        fmt::print("{:.1f}   {:7.4f}  {}\n", eta, v.acai, v.controllable ? "controllable" : "uncontrollable");
    }
    return 0;
}
