// Coherence lengths across the built-in species, plus the optical
// analogue for a few laser bandwidths.

#include <cstdio>

#include <beamcoh/beamcoh.hpp>

int main() {
    using namespace beamcoh;

    const PhysicalConstants pc;
    const SpeciesRegistry registry = SpeciesRegistry::builtin(pc);

    std::printf("%-6s %12s %18s %18s\n", "atom", "l (um)", "coh @ z_r=0 (um)", "coh @ z_r=l (um)");
    for (const auto& sp : registry.list()) {
        const double l = gravitational_length(sp.mass, pc);
        const auto at0 = coherence_length(sp, 0.0, 1, pc);
        const auto atl = coherence_length(sp, l, 1, pc);
        std::printf("%-6s %12.4f %18.4f %18.4f\n", sp.name.c_str(), l * 1e6,
                    at0.coherence_length * 1e6, atl.coherence_length * 1e6);
    }

    std::printf("\n%-14s %16s\n", "bandwidth", "optical coh (m)");
    for (double dnu : {5.0e6, 1.0e9, 1.0e12})
        std::printf("%-14.3e %16.6f\n", dnu, coherence_length_optical(dnu, 1, pc));
    return 0;
}
