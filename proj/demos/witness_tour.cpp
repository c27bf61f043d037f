// Quick tour: reference states, a Werner sweep, and the detection thresholds
// of each witness along its extremal family.

#include <cstdio>

#include <qwit/qwit.hpp>

using namespace qwit;

int main() {
    struct Row {
        const char* label;
        state::DensityMatrix rho;
    };
    const Row rows[] = {
        {"singlet        ", state::DensityMatrix::from_pure(state::psi_minus())},
        {"|VV>           ", state::DensityMatrix::from_pure(state::ket(1, 1))},
        {"maximally mixed", state::DensityMatrix(0.25 * Mat4::Identity())},
        {"werner p=0.6   ", state::make_family({state::Family::werner, 0.6})},
    };

    std::printf("%-16s %8s %8s %8s %8s %8s %8s\n", "state", "M", "B", "F", "E", "N", "C");
    for (const auto& row : rows) {
        auto w = witness::report(row.rho);
        std::printf("%-16s %8.4f %8.4f %8.4f %8.4f %8.4f %8.4f\n", row.label, w.M, w.B, w.F, w.E,
                    w.N, w.C);
    }

    std::printf("\nWerner sweep (detection turns on at p = 1/3, 1/sqrt(3), 1/sqrt(2)):\n");
    std::printf("%6s %8s %8s %8s %8s\n", "p", "N", "F", "E", "M");
    for (auto& c : montecarlo::family_curve(state::Family::werner, 11))
        std::printf("%6.2f %8.4f %8.4f %8.4f %8.4f\n", c.p, c.N, c.F, c.E, c.M);

    std::printf("\nNegativity thresholds (max N a witness can miss):\n");
    auto nm = montecarlo::family_threshold(state::Family::werner, montecarlo::WitnessKind::M);
    auto ne = montecarlo::family_threshold(state::Family::horodecki, montecarlo::WitnessKind::E);
    auto nf = montecarlo::family_threshold(state::Family::horodecki, montecarlo::WitnessKind::F);
    std::printf("  N_M = %.4f (werner p = %.4f)\n", nm.N, nm.p);
    std::printf("  N_E = %.4f (horodecki p = %.4f)\n", ne.N, ne.p);
    std::printf("  N_F = %.4f (horodecki p = %.4f)\n", nf.N, nf.p);
    return 0;
}
