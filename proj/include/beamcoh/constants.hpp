#pragma once

#include <cmath>
#include <numbers>

#include "errors.hpp"

namespace beamcoh {

inline constexpr double pi = std::numbers::pi;

// SI values, CODATA 2018. Every quantity in the library is SI unless a
// unit suffix in the name says otherwise. g is a plain member so that a
// different local gravity (or a hypothetical one) can be injected; all
// derived quantities read it from here rather than from a global.
struct PhysicalConstants {
    double hbar = 1.054571817e-34;   // reduced Planck constant, J s
    double g = 9.80665;              // standard gravity, m/s^2
    double mu_B = 9.2740100783e-24;  // Bohr magneton, J/T
    double c = 299792458.0;          // speed of light, m/s
    double amu = 1.66053906660e-27;  // atomic mass unit, kg

    void validate() const {
        if (!(hbar > 0.0) || !std::isfinite(hbar))
            throw input_error("constants: hbar must be finite and > 0");
        if (!(g > 0.0) || !std::isfinite(g))
            throw input_error("constants: g must be finite and > 0");
        if (!(mu_B > 0.0) || !std::isfinite(mu_B))
            throw input_error("constants: mu_B must be finite and > 0");
        if (!(c > 0.0) || !std::isfinite(c))
            throw input_error("constants: c must be finite and > 0");
        if (!(amu > 0.0) || !std::isfinite(amu))
            throw input_error("constants: amu must be finite and > 0");
    }
};

} // namespace beamcoh
