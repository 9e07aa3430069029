#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "constants.hpp"
#include "errors.hpp"
#include "numerics.hpp"
#include "species.hpp"

namespace beamcoh {

// Magnetic trap plus rf output coupler. Frequencies are angular (rad/s);
// the file loader in io.hpp accepts Hz and converts.
struct TrapConfig {
    Species species;
    double atom_number = 0.0;        // N, initially trapped atoms
    double omega_x = 0.0;            // rad/s, axial trap frequency
    double omega_perp = 0.0;         // rad/s, transverse trap frequency
    double B_rf = 0.0;               // T, rf field amplitude
    double B_0 = 0.0;                // T, background coil field
    double omega_rf = 0.0;           // rad/s, rf drive frequency
    double offset_curvature = 0.0;   // K, J/m^2, curvature of the field offset
    double coupling_factor = 1.0;    // F, finite beam-extension factor
    std::optional<double> E_minus1;  // J, trapped-state energy; enters only the
                                     // time-dependent phase of psi0

    void validate() const {
        if (!(species.mass > 0.0) || !(species.scattering_length > 0.0))
            throw input_error("trap: species needs mass > 0 and scattering length > 0");
        if (!(atom_number >= 1.0) || !std::isfinite(atom_number))
            throw input_error("trap: atom_number must be >= 1");
        if (!(omega_x > 0.0) || !std::isfinite(omega_x))
            throw input_error("trap: omega_x must be finite and > 0");
        if (!(omega_perp > 0.0) || !std::isfinite(omega_perp))
            throw input_error("trap: omega_perp must be finite and > 0");
        if (!(omega_rf > 0.0) || !std::isfinite(omega_rf))
            throw input_error("trap: omega_rf must be finite and > 0");
        if (!(B_rf >= 0.0) || !std::isfinite(B_rf))
            throw input_error("trap: B_rf must be finite and >= 0");
        if (!(B_0 >= 0.0) || !std::isfinite(B_0))
            throw input_error("trap: B_0 must be finite and >= 0");
        if (!std::isfinite(offset_curvature))
            throw input_error("trap: offset curvature K must be finite");
        if (!std::isfinite(coupling_factor))
            throw input_error("trap: coupling factor F must be finite");
    }
};

// Everything downstream of the trap parameters. Immutable once built;
// carries its own constants copy so later evaluations stay consistent
// with the g used to derive it.
struct DerivedTrapQuantities {
    std::string species_name;
    double mass = 0.0;       // kg
    double mu = 0.0;         // J, chemical potential
    double l = 0.0;          // m, gravitational length
    double x0 = 0.0;         // m, Thomas-Fermi radii
    double y0 = 0.0;
    double z0 = 0.0;
    double eta = 0.0;        // extraction parameter
    double z_r = 0.0;        // m, extraction point
    double Omega_rf = 0.0;   // rad/s, Rabi frequency
    double delta_rf = 0.0;   // rad/s, rf detuning
    double U = 0.0;          // J m^3, mean-field interaction strength
    double sigma = 0.0;      // m, oscillator length of the mean trap
    double omega_bar = 0.0;  // rad/s, geometric-mean trap frequency
    PhysicalConstants constants{};
};

// l = (hbar^2 / (2 M^2 g))^{1/3}: the length scale of a quantum particle
// falling under gravity.
inline double gravitational_length(double mass, const PhysicalConstants& pc = {}) {
    pc.validate();
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw input_error("gravitational length: mass must be finite and > 0");
    return std::cbrt(pc.hbar * pc.hbar / (2.0 * mass * mass * pc.g));
}

// Thomas-Fermi chemical potential, mu = (hbar w / 2)(15 a N / sigma)^{2/5},
// with w = (w_x w_perp^2)^{1/3} and sigma = sqrt(hbar / (M w)).
inline double chemical_potential(const TrapConfig& cfg, const PhysicalConstants& pc = {}) {
    pc.validate();
    cfg.validate();
    const double omega_bar = std::cbrt(cfg.omega_x * cfg.omega_perp * cfg.omega_perp);
    const double sigma = std::sqrt(pc.hbar / (cfg.species.mass * omega_bar));
    return 0.5 * pc.hbar * omega_bar *
           std::pow(15.0 * cfg.species.scattering_length * cfg.atom_number / sigma, 0.4);
}

// Full derivation chain: mu, condensate radii, Rabi frequency, detuning,
// extraction parameter eta and extraction point z_r = eta z0 / 2.
//
// The field offset V_off = mu_B B_0 / 2 + K z^2 / 2 is position-dependent
// only through K. For K != 0 the curvature term is evaluated at the
// extraction point with one fixed-point pass: eta is first computed with
// K = 0, then the detuning and eta are recomputed once at that z_r.
inline DerivedTrapQuantities derive_trap_quantities(const TrapConfig& cfg,
                                                    const PhysicalConstants& pc = {}) {
    pc.validate();
    cfg.validate();
    DerivedTrapQuantities dq;
    dq.species_name = cfg.species.name;
    dq.mass = cfg.species.mass;
    dq.constants = pc;
    dq.omega_bar = std::cbrt(cfg.omega_x * cfg.omega_perp * cfg.omega_perp);
    dq.sigma = std::sqrt(pc.hbar / (dq.mass * dq.omega_bar));
    dq.mu = chemical_potential(cfg, pc);
    dq.l = gravitational_length(dq.mass, pc);
    dq.x0 = std::sqrt(2.0 * dq.mu / (dq.mass * cfg.omega_x * cfg.omega_x));
    dq.y0 = std::sqrt(2.0 * dq.mu / (dq.mass * cfg.omega_perp * cfg.omega_perp));
    dq.z0 = dq.y0;
    dq.Omega_rf = pc.mu_B * cfg.B_rf / (2.0 * std::sqrt(2.0) * pc.hbar);
    dq.U = 4.0 * pi * pc.hbar * pc.hbar * cfg.species.scattering_length * cfg.atom_number /
           dq.mass;

    const auto eta_at = [&](double v_off) {
        const double hdelta = v_off - pc.hbar * cfg.omega_rf;
        return (2.0 * hdelta + 4.0 * dq.mu / 7.0) / (2.0 * dq.mass * pc.g * dq.z0);
    };
    double v_off = pc.mu_B * cfg.B_0 / 2.0;
    dq.eta = eta_at(v_off);
    dq.z_r = dq.eta * dq.z0 / 2.0;
    if (cfg.offset_curvature != 0.0) {
        v_off = pc.mu_B * cfg.B_0 / 2.0 + cfg.offset_curvature * dq.z_r * dq.z_r / 2.0;
        dq.eta = eta_at(v_off);
        dq.z_r = dq.eta * dq.z0 / 2.0;
    }
    dq.delta_rf = (v_off - pc.hbar * cfg.omega_rf) / pc.hbar;
    if (dq.z_r < 0.0) {
        std::ostringstream msg;
        msg << "derived extraction point is negative (eta = " << dq.eta
            << "): rf detuning is below the extraction threshold";
        throw negative_extraction_error(msg.str());
    }
    return dq;
}

// Minimal quantities for a coherence solve when no trap data is available:
// just the species' gravitational length and a directly chosen z_r.
inline DerivedTrapQuantities quantities_from_extraction(const Species& species, double z_r,
                                                        const PhysicalConstants& pc = {}) {
    if (!(z_r >= 0.0) || !std::isfinite(z_r))
        throw input_error("extraction point z_r must be finite and >= 0");
    DerivedTrapQuantities dq;
    dq.species_name = species.name;
    dq.mass = species.mass;
    dq.constants = pc;
    dq.l = gravitational_length(species.mass, pc);
    dq.z_r = z_r;
    return dq;
}

// The continuum treatment needs l well below the condensate radii.
inline bool scale_separation_ok(const DerivedTrapQuantities& dq) {
    return 10.0 * dq.l <= std::min({dq.x0, dq.y0, dq.z0});
}

// k(z) = sqrt(z + z_r) / l^{3/2}.
inline double local_wavenumber(const DerivedTrapQuantities& dq, double z) {
    const double s = z + dq.z_r;
    if (s < 0.0)
        throw domain_error("local wavenumber: z + z_r must be >= 0 (point above the turning point)");
    return std::sqrt(s) / std::pow(dq.l, 1.5);
}

// v(z) = hbar k(z) / M, kept on the same code path as local_wavenumber so
// the de Broglie relation holds to the last bit.
inline double local_velocity(const DerivedTrapQuantities& dq, double z) {
    return dq.constants.hbar * local_wavenumber(dq, z) / dq.mass;
}

// One point of the falling beam.
struct BeamPoint {
    double z = 0.0;                   // m below the extraction point
    double zeta_r = 0.0;              // (z + z_r) / l
    std::complex<double> psi0{0.0, 0.0};
    double density = 0.0;             // |psi0|^2
    double v = 0.0;                   // m/s
    double k = 0.0;                   // rad/m
};

// Output-coupled beam wavefunction in the weak-coupling limit,
//   psi0 = -sqrt(pi) (hbar Omega_rf / M g l) phi(x, y, z_r) F
//          * exp(i (2/3) zeta_r^{3/2} - i E_{-1} t / hbar) / zeta_r^{1/4},
// with phi the Thomas-Fermi profile frozen at the extraction surface.
// E_{-1} only ever enters this phase; it must be supplied for t != 0.
inline BeamPoint evaluate_psi0(const DerivedTrapQuantities& dq, const TrapConfig& cfg, double x,
                               double y, double z, double t = 0.0) {
    if (!(dq.x0 > 0.0) || !(dq.U > 0.0))
        throw input_error("psi0: needs quantities derived from a full trap config");
    const double zeta_r = (z + dq.z_r) / dq.l;
    if (!(zeta_r > 0.0))
        throw turning_point_error("psi0: point is at or above the turning region (zeta_r <= 0)");
    const double bracket = 1.0 - (x / dq.x0) * (x / dq.x0) - (y / dq.y0) * (y / dq.y0) -
                           (dq.z_r / dq.z0) * (dq.z_r / dq.z0);
    if (bracket < 0.0)
        throw outside_condensate_error(
            "psi0: (x, y, z_r) lies outside the Thomas-Fermi ellipsoid");
    const double phi = std::sqrt(dq.mu / dq.U) * std::sqrt(bracket);
    const double amp = -std::sqrt(pi) * dq.constants.hbar * dq.Omega_rf /
                       (dq.mass * dq.constants.g * dq.l) * phi * cfg.coupling_factor;
    double phase = (2.0 / 3.0) * std::pow(zeta_r, 1.5);
    if (t != 0.0) {
        if (!cfg.E_minus1)
            throw input_error("psi0: trapped-state energy E_minus1 is required for t != 0");
        phase -= *cfg.E_minus1 * t / dq.constants.hbar;
    }
    BeamPoint pt;
    pt.z = z;
    pt.zeta_r = zeta_r;
    pt.psi0 = amp / std::pow(zeta_r, 0.25) *
              std::complex<double>{std::cos(phase), std::sin(phase)};
    pt.density = std::norm(pt.psi0);
    pt.k = local_wavenumber(dq, z);
    pt.v = dq.constants.hbar * pt.k / dq.mass;
    return pt;
}

// Rephasing condition of the falling beam against its source,
//   (sqrt(z + z_r) - sqrt(2 z_r)) z = 2 n pi l^{3/2},
// written as a residual in m^{3/2}. For z_r > 0 the left-hand side dips
// through a shallow minimum near z = 0.48 z_r before growing without
// bound; the residual starts negative either way, so the positive root is
// unique.
inline double coherence_residual(const DerivedTrapQuantities& dq, double z, int n = 1) {
    if (n < 1)
        throw input_error("coherence residual: n must be >= 1");
    if (z < 0.0)
        throw domain_error("coherence residual: z must be >= 0");
    if (dq.z_r < 0.0)
        throw domain_error("coherence residual: z_r must be >= 0");
    return (std::sqrt(z + dq.z_r) - std::sqrt(2.0 * dq.z_r)) * z -
           2.0 * n * pi * std::pow(dq.l, 1.5);
}

struct CoherenceResult {
    std::string species;
    double l = 0.0;                 // m
    double z_r = 0.0;               // m
    int n = 1;
    double coherence_length = 0.0;  // m
    double residual = 0.0;          // m^{3/2}, at the returned root
};

// Solves the rephasing condition for z given (l, z_r, n). The residual is
// negative at z = 0 and eventually grows without bound, so a sign change
// always exists and the crossing is unique; the bracket search is seeded
// at l, the natural scale of the root.
inline CoherenceResult solve_coherence_length(double l, double z_r, int n = 1,
                                              std::string_view species_label = "") {
    if (!(l > 0.0) || !std::isfinite(l))
        throw input_error("coherence length: l must be finite and > 0");
    if (!(z_r >= 0.0) || !std::isfinite(z_r))
        throw input_error("coherence length: z_r must be finite and >= 0");
    if (n < 1)
        throw input_error("coherence length: n must be >= 1");
    const double rhs = 2.0 * n * pi * std::pow(l, 1.5);
    const auto f = [=](double z) {
        return (std::sqrt(z + z_r) - std::sqrt(2.0 * z_r)) * z - rhs;
    };
    const Bracket bracket = expand_bracket(f, l);
    const RootResult rr = find_root(f, bracket);
    CoherenceResult res;
    res.species = std::string(species_label);
    res.l = l;
    res.z_r = z_r;
    res.n = n;
    res.coherence_length = rr.root;
    res.residual = rr.residual;
    return res;
}

inline CoherenceResult coherence_length(const DerivedTrapQuantities& dq, int n = 1) {
    return solve_coherence_length(dq.l, dq.z_r, n, dq.species_name);
}

inline CoherenceResult coherence_length(const Species& species, double z_r, int n = 1,
                                        const PhysicalConstants& pc = {}) {
    return solve_coherence_length(gravitational_length(species.mass, pc), z_r, n, species.name);
}

} // namespace beamcoh
