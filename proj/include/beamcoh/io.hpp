#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "atomlaser.hpp"
#include "beamsim.hpp"
#include "errors.hpp"
#include "species.hpp"

namespace beamcoh {

// Shortest decimal string that round-trips to the same double. All
// machine-facing output (CSV, structured envelopes) goes through here so
// identical inputs always produce identical bytes.
inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{})
        throw error("format_double: conversion failed");
    return std::string(buf, ptr);
}

// Fixed-decimal formatting for human-facing display lines.
inline std::string format_fixed(double v, int decimals) {
    char buf[64];
    const int n = std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    if (n < 0 || n >= static_cast<int>(sizeof(buf)))
        throw error("format_fixed: conversion failed");
    return std::string(buf, n);
}

namespace detail {

inline double parse_double_token(const std::string& token, int lineno, const char* what) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw parse_error("line " + std::to_string(lineno) + ": cannot parse " +
                          std::string(what) + " '" + token + "'");
    return value;
}

} // namespace detail

// Spectrum file: one component per line, "k_rad_per_m amplitude",
// whitespace separated. '#' starts a comment; blank lines are skipped.
inline MomentumSpectrum load_spectrum(std::istream& in, double particle_mass,
                                      Dispersion dispersion = Dispersion::matter) {
    std::vector<SpectralComponent> components;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream row(line);
        std::string k_tok;
        if (!(row >> k_tok))
            continue;
        std::string a_tok;
        if (!(row >> a_tok))
            throw parse_error("spectrum line " + std::to_string(lineno) +
                              ": expected 'k_rad_per_m amplitude'");
        std::string extra;
        if (row >> extra)
            throw parse_error("spectrum line " + std::to_string(lineno) +
                              ": unexpected trailing token '" + extra + "'");
        SpectralComponent c;
        c.k = detail::parse_double_token(k_tok, lineno, "wavenumber");
        c.amplitude = detail::parse_double_token(a_tok, lineno, "amplitude");
        components.push_back(c);
    }
    if (components.empty())
        throw parse_error("spectrum: no components found");
    return MomentumSpectrum(std::move(components), particle_mass, dispersion);
}

inline MomentumSpectrum load_spectrum_file(const std::string& path, double particle_mass,
                                           Dispersion dispersion = Dispersion::matter) {
    std::ifstream in(path);
    if (!in)
        throw input_error("cannot open spectrum file '" + path + "'");
    try {
        return load_spectrum(in, particle_mass, dispersion);
    } catch (const parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
}

// CSV with full round-trip precision, one row per grid point.
inline void write_profile_csv(std::ostream& out, const CurrentProfile& profile) {
    out << "z_m,incoherent,coherent,total\n";
    for (std::size_t i = 0; i < profile.z_grid.size(); ++i)
        out << format_double(profile.z_grid[i]) << ',' << format_double(profile.incoherent[i])
            << ',' << format_double(profile.coherent[i]) << ','
            << format_double(profile.total[i]) << '\n';
}

struct TrapFile {
    TrapConfig config;
    std::optional<double> z_r_override;  // m
};

// Trap config file: "key value" per line, '#' comments. Frequencies are
// given in Hz and converted to rad/s here. Keys:
//   species            registry name            (required)
//   atom_number        N                        (required)
//   omega_x_hz         axial frequency, Hz      (required)
//   omega_perp_hz      transverse frequency, Hz (required)
//   B_rf_T             rf amplitude, T          (required)
//   B_0_T              background field, T      (required)
//   omega_rf_hz        rf frequency, Hz         (required)
//   K_J_per_m2         offset curvature         (optional, default 0)
//   F                  coupling factor          (optional, default 1)
//   E_minus1_J         trapped-state energy     (optional)
//   z_r_override_m     extraction point pin     (optional)
inline TrapFile load_trap_file(std::istream& in, const SpeciesRegistry& registry) {
    std::map<std::string, std::pair<std::string, int>> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream row(line);
        std::string key;
        if (!(row >> key))
            continue;
        std::string value;
        if (!(row >> value))
            throw parse_error("trap config line " + std::to_string(lineno) +
                              ": key '" + key + "' has no value");
        std::string extra;
        if (row >> extra)
            throw parse_error("trap config line " + std::to_string(lineno) +
                              ": unexpected trailing token '" + extra + "'");
        if (kv.count(key))
            throw parse_error("trap config line " + std::to_string(lineno) +
                              ": duplicate key '" + key + "'");
        kv[key] = {value, lineno};
    }

    const auto take = [&](const char* key) -> std::optional<std::pair<std::string, int>> {
        auto it = kv.find(key);
        if (it == kv.end())
            return std::nullopt;
        auto v = it->second;
        kv.erase(it);
        return v;
    };
    const auto require = [&](const char* key) {
        auto v = take(key);
        if (!v)
            throw parse_error(std::string("trap config: missing required key '") + key + "'");
        return *v;
    };
    const auto to_num = [](const std::pair<std::string, int>& v, const char* key) {
        return detail::parse_double_token(v.first, v.second, key);
    };

    TrapFile tf;
    tf.config.species = registry.lookup(require("species").first);
    tf.config.atom_number = to_num(require("atom_number"), "atom_number");
    tf.config.omega_x = 2.0 * pi * to_num(require("omega_x_hz"), "omega_x_hz");
    tf.config.omega_perp = 2.0 * pi * to_num(require("omega_perp_hz"), "omega_perp_hz");
    tf.config.B_rf = to_num(require("B_rf_T"), "B_rf_T");
    tf.config.B_0 = to_num(require("B_0_T"), "B_0_T");
    tf.config.omega_rf = 2.0 * pi * to_num(require("omega_rf_hz"), "omega_rf_hz");
    if (auto v = take("K_J_per_m2"))
        tf.config.offset_curvature = to_num(*v, "K_J_per_m2");
    if (auto v = take("F"))
        tf.config.coupling_factor = to_num(*v, "F");
    if (auto v = take("E_minus1_J"))
        tf.config.E_minus1 = to_num(*v, "E_minus1_J");
    if (auto v = take("z_r_override_m"))
        tf.z_r_override = to_num(*v, "z_r_override_m");
    if (!kv.empty())
        throw parse_error("trap config line " + std::to_string(kv.begin()->second.second) +
                          ": unknown key '" + kv.begin()->first + "'");
    tf.config.validate();
    return tf;
}

inline TrapFile load_trap_file_path(const std::string& path, const SpeciesRegistry& registry) {
    std::ifstream in(path);
    if (!in)
        throw input_error("cannot open trap config '" + path + "'");
    try {
        return load_trap_file(in, registry);
    } catch (const parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
}

} // namespace beamcoh
