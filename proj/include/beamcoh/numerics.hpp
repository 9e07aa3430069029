#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include "errors.hpp"

namespace beamcoh {

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
};

struct RootResult {
    double root = 0.0;
    double residual = 0.0;  // f(root)
    int iterations = 0;
};

namespace detail {

inline bool is_finite(double x) {
    return std::isfinite(x);
}

inline bool is_finite(const std::complex<double>& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

} // namespace detail

// Symmetric difference quotient, O(h^2). f may be real- or complex-valued.
template <class F>
auto central_difference(F&& f, double x, double h) {
    if (!(h > 0.0) || !std::isfinite(h))
        throw input_error("central_difference: step h must be finite and > 0");
    auto fp = f(x + h);
    auto fm = f(x - h);
    if (!detail::is_finite(fp) || !detail::is_finite(fm))
        throw non_finite_error("central_difference: f is not finite near x");
    return (fp - fm) / (2.0 * h);
}

// Slides a geometrically growing window [0, seed], [seed, 2 seed],
// [2 seed, 4 seed], ... until f changes sign across it. Suited to
// functions with a single positive root of unknown magnitude.
template <class F>
Bracket expand_bracket(F&& f, double seed, int max_doublings = 64) {
    if (!(seed > 0.0) || !std::isfinite(seed))
        throw input_error("expand_bracket: seed must be finite and > 0");
    double lo = 0.0;
    double hi = seed;
    double f_lo = f(lo);
    if (!std::isfinite(f_lo))
        throw non_finite_error("expand_bracket: f not finite at 0");
    for (int i = 0; i <= max_doublings; ++i) {
        double f_hi = f(hi);
        if (!std::isfinite(f_hi))
            throw non_finite_error("expand_bracket: f not finite at window edge");
        if (f_lo * f_hi <= 0.0)
            return {lo, hi};
        lo = hi;
        f_lo = f_hi;
        hi *= 2.0;
    }
    throw expansion_limit_error("expand_bracket: no sign change found while doubling the window");
}

// Bracketed secant with bisection fallback. Each step proposes a secant
// point through the current bracket ends; a proposal outside the bracket,
// or a step after one that failed to halve the bracket, is replaced by a
// bisection, so the bracket provably shrinks and the root never escapes.
template <class F>
RootResult find_root(F&& f, Bracket bracket, double rel_tol = 1e-12, int max_iter = 200) {
    if (!(rel_tol > 0.0) || !std::isfinite(rel_tol))
        throw input_error("find_root: rel_tol must be finite and > 0");
    if (max_iter < 1)
        throw input_error("find_root: max_iter must be >= 1");
    double lo = bracket.lo;
    double hi = bracket.hi;
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
        throw input_error("find_root: bracket must satisfy lo < hi");
    double f_lo = f(lo);
    double f_hi = f(hi);
    if (!std::isfinite(f_lo) || !std::isfinite(f_hi))
        throw non_finite_error("find_root: f not finite at bracket ends");
    if (f_lo == 0.0)
        return {lo, 0.0, 0};
    if (f_hi == 0.0)
        return {hi, 0.0, 0};
    if (f_lo * f_hi > 0.0)
        throw no_sign_change_error("find_root: f has the same sign at both bracket ends");

    // Residual acceptance is measured against the bracket-end magnitudes,
    // which makes convergence invariant under rescaling of f.
    const double scale = std::max(std::abs(f_lo), std::abs(f_hi));
    bool force_bisect = false;
    for (int iter = 1; iter <= max_iter; ++iter) {
        const double width = hi - lo;
        double x = 0.5 * (lo + hi);
        if (!force_bisect && f_hi != f_lo) {
            const double secant = hi - f_hi * (hi - lo) / (f_hi - f_lo);
            if (secant > lo && secant < hi)
                x = secant;
        }
        const double fx = f(x);
        if (!std::isfinite(fx))
            throw non_finite_error("find_root: f not finite inside the bracket");
        if (fx == 0.0)
            return {x, 0.0, iter};
        if (f_lo * fx < 0.0) {
            hi = x;
            f_hi = fx;
        } else {
            lo = x;
            f_lo = fx;
        }
        force_bisect = (hi - lo) > 0.5 * width;
        if (hi - lo <= rel_tol * std::max(1.0, std::abs(x)) && std::abs(fx) <= rel_tol * scale)
            return {x, fx, iter};
    }
    throw iteration_limit_error("find_root: no convergence within the iteration limit");
}

} // namespace beamcoh
