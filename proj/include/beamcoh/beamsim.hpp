#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "constants.hpp"
#include "errors.hpp"
#include "numerics.hpp"

namespace beamcoh {

// omega(k) rule attached to a spectrum: quadratic for massive particles,
// linear for light in vacuum.
enum class Dispersion { matter, vacuum_light };

struct SpectralComponent {
    double k = 0.0;          // rad/m
    double amplitude = 0.0;  // real by construction
};

// Discrete superposition of longitudinal plane waves,
//   psi(z, t) = sum_j A_j exp(i (k_j z - omega_j t)),
// with real amplitudes A_j. The current-density decomposition below leans
// on the amplitudes being real: all interference phases then come from
// (k' - k) z alone at t = 0.
class MomentumSpectrum {
public:
    MomentumSpectrum(std::vector<SpectralComponent> components, double particle_mass,
                     Dispersion dispersion = Dispersion::matter)
        : components_(std::move(components)), mass_(particle_mass), dispersion_(dispersion) {
        if (components_.empty())
            throw input_error("spectrum: at least one component required");
        if (!(mass_ > 0.0) || !std::isfinite(mass_))
            throw input_error("spectrum: particle mass must be finite and > 0");
        for (std::size_t i = 0; i < components_.size(); ++i) {
            if (!std::isfinite(components_[i].k) || !std::isfinite(components_[i].amplitude))
                throw input_error("spectrum: components must be finite");
            for (std::size_t j = 0; j < i; ++j)
                if (components_[i].k == components_[j].k)
                    throw input_error("spectrum: duplicate wavenumber");
        }
    }

    const std::vector<SpectralComponent>& components() const { return components_; }
    double particle_mass() const { return mass_; }
    Dispersion dispersion() const { return dispersion_; }

    double omega(double k, const PhysicalConstants& pc = {}) const {
        if (dispersion_ == Dispersion::matter)
            return pc.hbar * k * k / (2.0 * mass_);
        return pc.c * std::abs(k);
    }

    double max_abs_k() const {
        double m = 0.0;
        for (const auto& c : components_)
            m = std::max(m, std::abs(c.k));
        return m;
    }

private:
    std::vector<SpectralComponent> components_;
    double mass_;
    Dispersion dispersion_;
};

inline std::complex<double> synthesize_wavefunction(const MomentumSpectrum& spec, double z,
                                                    double t, const PhysicalConstants& pc = {}) {
    std::complex<double> psi{0.0, 0.0};
    for (const auto& c : spec.components()) {
        const double phase = c.k * z - spec.omega(c.k, pc) * t;
        psi += c.amplitude * std::complex<double>{std::cos(phase), std::sin(phase)};
    }
    return psi;
}

// J = (hbar / 2 m i) (psi* psi' - psi psi'*) = (hbar / m) Im(psi* psi'),
// with psi' taken by central difference. Reference implementation; the
// spectral form below is the fast path.
inline double current_density_fd(const MomentumSpectrum& spec, double z, double t, double h,
                                 const PhysicalConstants& pc = {}) {
    const auto psi = synthesize_wavefunction(spec, z, t, pc);
    const auto dpsi = central_difference(
        [&](double zz) { return synthesize_wavefunction(spec, zz, t, pc); }, z, h);
    return pc.hbar / spec.particle_mass() * std::imag(std::conj(psi) * dpsi);
}

struct CurrentProfile {
    std::vector<double> z_grid;      // m
    std::vector<double> incoherent;  // z-independent background, repeated per grid point
    std::vector<double> coherent;    // cross-term interference
    std::vector<double> total;       // incoherent + coherent, elementwise
};

// Closed-form current at t = 0, split into the diagonal (incoherent) part
//   (hbar / 2 m) 2 sum_k k A_k^2
// and the off-diagonal (coherent) part
//   (hbar / 2 m) 2 sum_{k'} sum_{k != k'} A_{k'} A_k k cos((k' - k) z).
// The coherent part is what beats against itself to produce foci.
inline CurrentProfile current_density_spectral(const MomentumSpectrum& spec,
                                               std::span<const double> z_grid,
                                               const PhysicalConstants& pc = {}) {
    if (z_grid.empty())
        throw input_error("current profile: z grid must be non-empty");
    for (std::size_t i = 0; i + 1 < z_grid.size(); ++i)
        if (!(z_grid[i] < z_grid[i + 1]))
            throw input_error("current profile: z grid must be strictly increasing");

    const auto& comps = spec.components();
    const double pref = pc.hbar / (2.0 * spec.particle_mass());

    double inc = 0.0;
    for (const auto& c : comps)
        inc += c.k * c.amplitude * c.amplitude;
    inc *= 2.0 * pref;

    CurrentProfile profile;
    profile.z_grid.assign(z_grid.begin(), z_grid.end());
    profile.incoherent.assign(z_grid.size(), inc);
    profile.coherent.reserve(z_grid.size());
    profile.total.reserve(z_grid.size());
    for (const double z : z_grid) {
        double coh = 0.0;
        for (std::size_t a = 0; a < comps.size(); ++a)
            for (std::size_t b = 0; b < comps.size(); ++b) {
                if (b == a)
                    continue;
                coh += comps[a].amplitude * comps[b].amplitude * comps[b].k *
                       std::cos((comps[a].k - comps[b].k) * z);
            }
        coh *= 2.0 * pref;
        profile.coherent.push_back(coh);
        profile.total.push_back(inc + coh);
    }
    return profile;
}

struct FocusSet {
    double k = 0.0;        // rad/m
    double k_prime = 0.0;  // rad/m
    std::vector<int> orders;
    std::vector<double> positions;  // z_n = 2 pi n / |k' - k|
};

// Foci of a two-component beat: the cos((k' - k) z) cross term peaks where
// (k' - k) z = 2 n pi.
inline FocusSet focus_positions(double k, double k_prime, int n_max) {
    if (!std::isfinite(k) || !std::isfinite(k_prime))
        throw input_error("focus positions: wavenumbers must be finite");
    if (n_max < 1)
        throw input_error("focus positions: n_max must be >= 1");
    if (k == k_prime)
        throw degenerate_pair_error("focus positions: equal wavenumbers never rephase");
    const double dk = std::abs(k_prime - k);
    FocusSet set;
    set.k = k;
    set.k_prime = k_prime;
    set.orders.reserve(static_cast<std::size_t>(n_max));
    set.positions.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        set.orders.push_back(n);
        set.positions.push_back(2.0 * pi * n / dk);
    }
    return set;
}

// First-focus distance for a velocity spread delta_v: 2 n pi hbar / (m delta_v).
inline double coherence_length_matter(double mass, double delta_v, int n = 1,
                                      const PhysicalConstants& pc = {}) {
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw input_error("matter coherence length: mass must be finite and > 0");
    if (!(delta_v > 0.0) || !std::isfinite(delta_v))
        throw input_error("matter coherence length: delta_v must be finite and > 0");
    if (n < 1)
        throw input_error("matter coherence length: n must be >= 1");
    return 2.0 * n * pi * pc.hbar / (mass * delta_v);
}

// Optical analogue for a frequency bandwidth delta_nu: n c / delta_nu.
inline double coherence_length_optical(double delta_nu, int n = 1,
                                       const PhysicalConstants& pc = {}) {
    if (!(delta_nu > 0.0) || !std::isfinite(delta_nu))
        throw input_error("optical coherence length: bandwidth must be finite and > 0");
    if (n < 1)
        throw input_error("optical coherence length: n must be >= 1");
    return n * pc.c / delta_nu;
}

// Strict interior maxima of the coherent term on the sampled grid. Grid
// resolution bounds the accuracy; intended as a cross-check against the
// closed-form focus positions.
inline std::vector<double> locate_foci_numeric(const CurrentProfile& profile) {
    const auto n = profile.z_grid.size();
    if (profile.coherent.size() != n || profile.incoherent.size() != n ||
        profile.total.size() != n)
        throw input_error("locate foci: profile columns must have equal length");
    std::vector<double> foci;
    for (std::size_t i = 1; i + 1 < n; ++i)
        if (profile.coherent[i] > profile.coherent[i - 1] &&
            profile.coherent[i] > profile.coherent[i + 1])
            foci.push_back(profile.z_grid[i]);
    return foci;
}

} // namespace beamcoh
