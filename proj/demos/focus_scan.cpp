// Two-component beam: closed-form focus prediction vs. the sampled
// current-density profile.

#include <cstdio>

#include <beamcoh/beamcoh.hpp>

int main() {
    using namespace beamcoh;

    const PhysicalConstants pc;
    const Species na = SpeciesRegistry::builtin(pc).lookup("Na23");

    // Two plane waves 2 pi rad/m apart: foci every metre.
    const MomentumSpectrum spec({{1.0e7, 1.0}, {1.0e7 + 2.0 * pi, 0.8}}, na.mass);

    std::vector<double> grid;
    for (int i = 0; i <= 400; ++i)
        grid.push_back(0.5 + i * (2.0 / 400.0));
    const CurrentProfile profile = current_density_spectral(spec, grid, pc);

    const FocusSet predicted =
        focus_positions(spec.components()[0].k, spec.components()[1].k, 2);
    std::printf("predicted foci (m):");
    for (double z : predicted.positions)
        std::printf(" %.6f", z);
    std::printf("\n");

    std::printf("detected maxima of the coherent term (m):");
    for (double z : locate_foci_numeric(profile))
        std::printf(" %.6f", z);
    std::printf("\n");

    const double j0 = current_density_fd(spec, predicted.positions[0], 0.0, 1e-9, pc);
    std::printf("current at the first focus, finite-difference check: %.6e\n", j0);
    return 0;
}
